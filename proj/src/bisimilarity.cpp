#include "natcalc/bisimilarity.hpp"

#include "natcalc/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace natcalc {

const char *to_string(Mode m)
{
    switch (m) {
    case Mode::Strong:
        return "strong";
    case Mode::Weak:
        return "weak";
    case Mode::Mixed:
        return "mixed";
    }
    return "?";
}

const char *to_string(Verdict v)
{
    switch (v) {
    case Verdict::Bisimilar:
        return "Bisimilar";
    case Verdict::NotBisimilar:
        return "NotBisimilar";
    case Verdict::BoundedBisimilar:
        return "BoundedBisimilar";
    case Verdict::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

std::vector<StatePair> converse(std::vector<StatePair> relation)
{
    for (auto &[p, q] : relation) {
        std::swap(p, q);
    }
    std::sort(relation.begin(), relation.end());
    return relation;
}

namespace {

class Game {
public:
    Game(const LtsGraph &g, Mode mode) : g_(g), mode_(mode)
    {
        if (mode != Mode::Strong && !g.has_weak_edges()) {
            throw std::invalid_argument(std::string(to_string(mode)) + " mode needs a saturated graph");
        }
    }

    const std::vector<Edge> &challenges(StateId s) const { return mode_ == Mode::Weak ? g_.weak_edges(s) : g_.edges(s); }
    const std::vector<Edge> &answers(StateId s) const { return mode_ == Mode::Strong ? g_.edges(s) : g_.weak_edges(s); }

    /// The n smallest minted channels free in neither state: where binding
    /// residuals of the two states are compared.
    std::vector<ChannelId> shared_tuple(StateId p, StateId q, std::size_t n) const
    {
        std::vector<ChannelId> out;
        for (ChannelId c : g_.minted()) {
            if (out.size() == n) {
                break;
            }
            if (!g_.state(p).free.contains(c) && !g_.state(q).free.contains(c)) {
                out.push_back(c);
            }
        }
        if (out.size() < n) {
            throw BudgetExceeded("comparing binding residuals needs " + std::to_string(n) + " shared fresh channels");
        }
        return out;
    }

    /// Targets of e (from `mover`) and f (from `other`) at the shared tuple,
    /// if the labels agree and both are instantiated there.
    std::optional<std::pair<StateId, StateId>> targets(StateId mover, const Edge &e, StateId other, const Edge &f) const
    {
        if (!(e.label == f.label)) {
            return std::nullopt;
        }
        if (e.label.arity == 0) {
            return std::make_pair(e.instances.front().target, f.instances.front().target);
        }
        auto tuple = shared_tuple(mover, other, e.label.arity);
        const EdgeInstance *ie = e.instance_at(tuple);
        const EdgeInstance *jf = f.instance_at(tuple);
        if (ie == nullptr || jf == nullptr) {
            return std::nullopt;
        }
        return std::make_pair(ie->target, jf->target);
    }

    const LtsGraph &graph() const { return g_; }

private:
    const LtsGraph &g_;
    Mode mode_;
};

/// Removal levels of the Jacobi refinement from the full relation: 0 means
/// the pair survives, k >= 1 that it is dropped in round k.
class Refinement {
public:
    Refinement(const Game &game, std::optional<std::size_t> max_rounds)
        : game_(game), n_(game.graph().size()), removed_(n_ * n_, 0)
    {
        std::size_t round = 0;
        while (!max_rounds || round < *max_rounds) {
            ++round;
            bool changed = false;
            for (StateId a = 0; a < n_; ++a) {
                for (StateId b = 0; b < n_; ++b) {
                    if (removed_[a * n_ + b] != 0) {
                        continue;
                    }
                    if (!survives(a, b, round - 1)) {
                        removed_[a * n_ + b] = round;
                        changed = true;
                    }
                }
            }
            rounds_ = round;
            if (!changed) {
                break;
            }
        }
    }

    std::size_t level(StateId a, StateId b) const { return removed_[a * n_ + b]; }
    /// Membership in the relation after k rounds.
    bool in(StateId a, StateId b, std::size_t k) const
    {
        std::size_t r = removed_[a * n_ + b];
        return r == 0 || r > k;
    }
    std::size_t rounds() const { return rounds_; }

    /// Whether the left-moving (or right-moving) challenge e of the pair
    /// has an answer whose targets are related after k rounds.
    bool answered(StateId a, StateId b, bool left_moves, const Edge &e, std::size_t k) const
    {
        const StateId mover = left_moves ? a : b;
        const StateId other = left_moves ? b : a;
        for (const Edge &f : game_.answers(other)) {
            auto t = game_.targets(mover, e, other, f);
            if (t && (left_moves ? in(t->first, t->second, k) : in(t->second, t->first, k))) {
                return true;
            }
        }
        return false;
    }

    /// A challenge refutes the pair only when it is unanswered and the
    /// defending state's moves are all known.
    bool refutes(StateId a, StateId b, bool left_moves, const Edge &e, std::size_t k) const
    {
        return game_.graph().complete(left_moves ? b : a) && !answered(a, b, left_moves, e, k);
    }

private:
    bool survives(StateId a, StateId b, std::size_t k) const
    {
        for (const Edge &e : game_.challenges(a)) {
            if (refutes(a, b, true, e, k)) {
                return false;
            }
        }
        for (const Edge &e : game_.challenges(b)) {
            if (refutes(a, b, false, e, k)) {
                return false;
            }
        }
        return true;
    }

    const Game &game_;
    std::size_t n_;
    std::vector<std::size_t> removed_;
    std::size_t rounds_ = 0;
};

Play extract_play(const Game &game, const Refinement &ref, StateId a, StateId b)
{
    Play play;
    while (true) {
        const std::size_t level = ref.level(a, b);
        PlayRound round;
        round.left = a;
        round.right = b;
        const Edge *challenge = nullptr;
        for (bool left_moves : {true, false}) {
            for (const Edge &e : game.challenges(left_moves ? a : b)) {
                if (ref.refutes(a, b, left_moves, e, level - 1)) {
                    challenge = &e;
                    round.left_moves = left_moves;
                    break;
                }
            }
            if (challenge != nullptr) {
                break;
            }
        }
        if (challenge == nullptr) {
            throw std::logic_error("refinement levels are inconsistent");
        }
        const StateId mover = round.left_moves ? a : b;
        const StateId other = round.left_moves ? b : a;
        round.label = challenge->label;
        if (challenge->label.arity == 0) {
            round.challenge_target = challenge->instances.front().target;
        } else {
            round.opened = game.shared_tuple(mover, other, challenge->label.arity);
            round.challenge_target = challenge->instance_at(round.opened)->target;
        }
        // The defender picks the answer that survives longest.
        std::optional<std::pair<StateId, StateId>> best;
        std::size_t best_level = 0;
        for (const Edge &f : game.answers(other)) {
            auto t = game.targets(mover, *challenge, other, f);
            if (!t) {
                continue;
            }
            StatePair next = round.left_moves ? StatePair{t->first, t->second} : StatePair{t->second, t->first};
            std::size_t l = ref.level(next.first, next.second);
            if (!best || l > best_level) {
                best = next;
                best_level = l;
                round.answer_target = t->second;
            }
        }
        play.rounds.push_back(round);
        if (!best) {
            return play;
        }
        a = best->first;
        b = best->second;
    }
}

std::vector<StatePair> extract_witness(const Game &game, const Refinement &ref, StateId a, StateId b)
{
    std::set<StatePair> seen{{a, b}};
    std::deque<StatePair> queue{{a, b}};
    auto related = [&](StateId x, StateId y) { return ref.level(x, y) == 0; };
    while (!queue.empty()) {
        auto [p, q] = queue.front();
        queue.pop_front();
        for (bool left_moves : {true, false}) {
            const StateId mover = left_moves ? p : q;
            const StateId other = left_moves ? q : p;
            for (const Edge &e : game.challenges(mover)) {
                std::optional<StatePair> pick;
                for (const Edge &f : game.answers(other)) {
                    auto t = game.targets(mover, e, other, f);
                    if (!t) {
                        continue;
                    }
                    StatePair next = left_moves ? StatePair{t->first, t->second} : StatePair{t->second, t->first};
                    if (!related(next.first, next.second)) {
                        continue;
                    }
                    if (!pick || seen.contains(next) || next.first == next.second) {
                        pick = next;
                        if (seen.contains(next) || next.first == next.second) {
                            break;
                        }
                    }
                }
                if (pick && seen.insert(*pick).second) {
                    queue.push_back(*pick);
                }
            }
        }
    }
    return {seen.begin(), seen.end()};
}

} // namespace

BisimResult bisimilarity_on(const LtsGraph &g, StateId p, StateId q, Mode mode, Method method)
{
    BisimResult result;
    result.left = p;
    result.right = q;
    result.mode = mode;
    const bool complete = g.all_complete();
    if (!complete && (!method.rounds || mode != Mode::Strong)) {
        result.graph = g;
        result.verdict = Verdict::Inconclusive;
        result.reason = kIncompleteExploration;
        return result;
    }
    result.graph = (mode == Mode::Strong || g.has_weak_edges()) ? g : weak_saturate(g);
    Game game(result.graph, mode);
    Refinement ref(game, method.rounds);

    if (ref.level(p, q) != 0) {
        result.verdict = Verdict::NotBisimilar;
        result.play = extract_play(game, ref, p, q);
        return result;
    }
    if (method.rounds) {
        result.verdict = Verdict::BoundedBisimilar;
        result.rounds = *method.rounds;
        return result;
    }
    result.verdict = Verdict::Bisimilar;
    result.witness = extract_witness(game, ref, p, q);
    return result;
}

BisimResult bisimilarity(const Process &p, const Process &q, const Universe &u, TransitionSystem system, Mode mode,
                         Method method, Limits limits)
{
    LtsGraph g = explore(std::vector<Process>{p, q}, u, system, limits);
    return bisimilarity_on(g, g.roots()[0], g.roots()[1], mode, method);
}

std::optional<SimulationViolation> simulation_violation(const std::vector<StatePair> &relation, const LtsGraph &g,
                                                        Mode mode)
{
    Game game(g, mode);
    std::set<StatePair> rel(relation.begin(), relation.end());
    for (auto [p, q] : relation) {
        if (!g.complete(p) || !g.complete(q)) {
            throw IncompleteStates("relation touches a state that is not fully explored");
        }
    }
    for (auto [p, q] : relation) {
        for (const Edge &e : game.challenges(p)) {
            bool ok = false;
            for (const Edge &f : game.answers(q)) {
                auto t = game.targets(p, e, q, f);
                if (t && rel.contains(*t)) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                SimulationViolation v{p, q, e.label, {}, e.instances.front().target};
                if (e.label.arity > 0) {
                    v.opened = game.shared_tuple(p, q, e.label.arity);
                    if (const EdgeInstance *inst = e.instance_at(v.opened)) {
                        v.challenge_target = inst->target;
                    }
                }
                return v;
            }
        }
    }
    return std::nullopt;
}

bool is_simulation(const std::vector<StatePair> &relation, const LtsGraph &g, Mode mode)
{
    return !simulation_violation(relation, g, mode).has_value();
}

bool replay_play(const BisimResult &result)
{
    if (result.verdict != Verdict::NotBisimilar || result.play.rounds.empty()) {
        return false;
    }
    Game game(result.graph, result.mode);
    StatePair cur{result.left, result.right};
    for (std::size_t k = 0; k < result.play.rounds.size(); ++k) {
        const PlayRound &r = result.play.rounds[k];
        if (r.left != cur.first || r.right != cur.second) {
            return false;
        }
        const StateId mover = r.left_moves ? r.left : r.right;
        const StateId other = r.left_moves ? r.right : r.left;
        if (r.label.arity > 0 && r.opened != game.shared_tuple(mover, other, r.label.arity)) {
            return false;
        }
        auto lands = [&](const Edge &e, StateId target) {
            const EdgeInstance *inst = e.instance_at(r.opened);
            return e.label == r.label && inst != nullptr && inst->target == target;
        };
        const auto &challenges = game.challenges(mover);
        if (std::none_of(challenges.begin(), challenges.end(),
                         [&](const Edge &e) { return lands(e, r.challenge_target); })) {
            return false;
        }
        const auto &answers = game.answers(other);
        if (!r.answer_target) {
            // The final challenge must be genuinely unanswerable.
            const bool last = k + 1 == result.play.rounds.size();
            return last && std::none_of(answers.begin(), answers.end(), [&](const Edge &f) {
                       return f.label == r.label && f.instance_at(r.opened) != nullptr;
                   });
        }
        if (std::none_of(answers.begin(), answers.end(), [&](const Edge &f) { return lands(f, *r.answer_target); })) {
            return false;
        }
        cur = r.left_moves ? StatePair{r.challenge_target, *r.answer_target}
                           : StatePair{*r.answer_target, r.challenge_target};
    }
    return false;
}

} // namespace natcalc
