#pragma once

#include "natcalc/lts_graph.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace natcalc {

/// Which edges challenge and which answer: strong/strong, weak/weak, or
/// strong challenges with weak answers.
enum class Mode { Strong, Weak, Mixed };

const char *to_string(Mode m);

/// Exact greatest fixpoint, or a k-round game.
struct Method {
    std::optional<std::size_t> rounds;

    static Method exact() { return {}; }
    static Method bounded(std::size_t k) { return {k}; }
};

enum class Verdict { Bisimilar, NotBisimilar, BoundedBisimilar, Inconclusive };

const char *to_string(Verdict v);

using StatePair = std::pair<StateId, StateId>;

/// One round of a distinguishing play. The attacker moves from the left
/// state when `left_moves` is set, from the right state otherwise; the
/// defender answers with an edge of the same label from the other state.
struct PlayRound {
    StateId left = 0;
    StateId right = 0;
    bool left_moves = true;
    Label label;
    std::vector<ChannelId> opened;
    StateId challenge_target = 0;
    /// The defender's answer target, absent in the last round.
    std::optional<StateId> answer_target;
};

struct Play {
    std::vector<PlayRound> rounds;
};

struct BisimResult {
    Verdict verdict = Verdict::Inconclusive;
    /// Rounds survived for BoundedBisimilar.
    std::size_t rounds = 0;
    std::string reason;
    LtsGraph graph;
    StateId left = 0;
    StateId right = 0;
    Mode mode = Mode::Strong;
    /// A bisimulation containing (left, right), for Bisimilar.
    std::vector<StatePair> witness;
    /// For NotBisimilar.
    Play play;
};

/// Reason reported when an exact query meets an incompletely explored graph.
inline constexpr const char *kIncompleteExploration = "IncompleteExploration";

/// Explores p and q jointly and decides their bisimilarity in `mode`.
BisimResult bisimilarity(const Process &p, const Process &q, const Universe &u, TransitionSystem system, Mode mode,
                         Method method, Limits limits = {});

/// Same on an explored graph; weak and mixed modes saturate it first.
BisimResult bisimilarity_on(const LtsGraph &g, StateId p, StateId q, Mode mode, Method method);

struct SimulationViolation {
    StateId p = 0;
    StateId q = 0;
    Label label;
    std::vector<ChannelId> opened;
    StateId challenge_target = 0;
};

/// Whether every challenge of a related pair (p, q) has a lift-related
/// answer from q. Challenges are strong edges, or weak edges in Weak mode;
/// answers are strong edges in Strong mode and weak edges otherwise, so the
/// graph must be saturated for Weak and Mixed. Throws IncompleteStates when
/// a related state is not fully explored.
std::optional<SimulationViolation> simulation_violation(const std::vector<StatePair> &relation, const LtsGraph &g,
                                                        Mode mode);
bool is_simulation(const std::vector<StatePair> &relation, const LtsGraph &g, Mode mode);

std::vector<StatePair> converse(std::vector<StatePair> relation);

/// Checks a distinguishing play move by move: each challenge and answer is
/// an edge of the graph with matching labels, each round continues from the
/// previous targets, and the last challenge has no answer with its label.
bool replay_play(const BisimResult &result);

} // namespace natcalc
