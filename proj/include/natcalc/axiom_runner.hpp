#pragma once

#include "natcalc/residual_algebra.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace natcalc {

enum class SuiteTarget { Basic, Proper, NormalDerived };

/// Deliberately broken structures, used to show that the suites catch
/// violations: a lift dropping opening pairs, a fuse without the
/// acting-silent rule, and a silent relation with a shared residual.
enum class InjectedMutant { None, Relator, Monad, Silent };

struct SuiteOptions {
    SuiteTarget target = SuiteTarget::Basic;
    /// Random relations per suite, on top of identity, empty and full.
    std::size_t cases = 200;
    std::uint64_t seed = 1;
    /// Size of the process carrier.
    std::size_t states = 20;
    InjectedMutant mutant = InjectedMutant::None;
};

struct SuiteRun {
    std::vector<AxiomReport> reports;
    /// For each failed axiom ("suite/axiom"), whether its counterexample
    /// reproduces the failure when replayed.
    std::map<std::string, bool> replays;

    bool passed() const;
};

/// Basic: relator, direct monad and silent suites of the basic structure.
/// Proper: relator and silent suites of the proper structure, then the monad
/// suite with the derived fuse. NormalDerived: the basic silent suite, the
/// derived fuse compared with the direct one, and the derived monad suite.
/// All run over algebra_universe().
SuiteRun run_axiom_suites(const SuiteOptions &options);

std::string to_json(const SuiteRun &run);
const char *to_string(SuiteTarget t);

} // namespace natcalc
