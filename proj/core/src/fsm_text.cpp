#include "swarmlab/fsm_text.hpp"

#include <cstdint>
#include <stdexcept>

#include "swarmlab/errors.hpp"
#include "swarmlab/text.hpp"

namespace swarmlab {

std::string fsm_to_flags(const FsmDescriptor& fsm) {
    validate(fsm);
    std::string out = "--nstates " + format_int(static_cast<long long>(fsm.states.size()));
    for (std::size_t i = 0; i < fsm.states.size(); ++i) {
        const StateSpec& s = fsm.states[i];
        const std::string si = format_int(static_cast<long long>(i));
        out += " --s" + si + " " + to_string(s.behavior);
        if (s.behavior == Behavior::Exploration) out += " --rwm" + si + " " + format_int(s.rwm);
        if (s.behavior == Behavior::Attraction) out += " --att" + si + " " + format_double(s.att);
        if (s.behavior == Behavior::Repulsion) out += " --rep" + si + " " + format_double(s.rep);
        out += " --n" + si + " " + format_int(static_cast<long long>(s.transitions.size()));
        for (std::size_t j = 0; j < s.transitions.size(); ++j) {
            const TransitionSpec& t = s.transitions[j];
            const std::string sij = si + "x" + format_int(static_cast<long long>(j));
            out += " --n" + sij + " " + format_int(t.target);
            out += " --c" + sij + " " + to_string(t.condition);
            switch (t.condition) {
                case Condition::BlackFloor:
                case Condition::GrayFloor:
                case Condition::WhiteFloor:
                case Condition::FixedProbability:
                    out += " --p" + sij + " " + format_double(t.beta);
                    break;
                case Condition::NeighborCount:
                case Condition::InvertedNeighborCount:
                    out += " --w" + sij + " " + format_double(t.eta);
                    out += " --t" + sij + " " + format_int(t.xi);
                    break;
            }
        }
    }
    return out;
}

namespace {

class TokenReader {
public:
    explicit TokenReader(const std::vector<std::string>& tokens) : tokens_(tokens) {}

    std::size_t pos() const { return pos_; }
    bool done() const { return pos_ >= tokens_.size(); }

    void expect_flag(const std::string& name) {
        if (done()) throw ParseError(pos_, "expected " + name + " but input ended");
        if (tokens_[pos_] != name)
            throw ParseError(pos_, "expected " + name + ", got " + tokens_[pos_]);
        ++pos_;
    }

    std::string word() {
        if (done()) throw ParseError(pos_, "unexpected end of input");
        return tokens_[pos_++];
    }

    long long integer(const std::string& what, long long lo, long long hi) {
        if (done()) throw ParseError(pos_, "expected " + what + " but input ended");
        std::int64_t v = 0;
        if (!try_parse_int(tokens_[pos_], v))
            throw ParseError(pos_, what + " must be an integer, got " + tokens_[pos_]);
        if (v < lo || v > hi)
            throw ParseError(pos_, what + " outside [" + format_int(lo) + "," + format_int(hi) +
                                       "]: " + tokens_[pos_]);
        ++pos_;
        return v;
    }

    double real(const std::string& what, double lo, double hi) {
        if (done()) throw ParseError(pos_, "expected " + what + " but input ended");
        double v = 0.0;
        if (!try_parse_double(tokens_[pos_], v))
            throw ParseError(pos_, what + " must be a number, got " + tokens_[pos_]);
        if (!(v >= lo && v <= hi))
            throw ParseError(pos_, what + " outside [" + format_double(lo) + "," +
                                       format_double(hi) + "]: " + tokens_[pos_]);
        ++pos_;
        return v;
    }

private:
    const std::vector<std::string>& tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

FsmDescriptor fsm_from_tokens(const std::vector<std::string>& tokens) {
    TokenReader in(tokens);
    in.expect_flag("--nstates");
    const int nstates = static_cast<int>(in.integer("state count", 1, 4));
    FsmDescriptor fsm;
    fsm.states.resize(nstates);
    for (int i = 0; i < nstates; ++i) {
        const std::string si = format_int(i);
        StateSpec& s = fsm.states[i];
        in.expect_flag("--s" + si);
        const std::size_t behavior_pos = in.pos();
        const std::string behavior_word = in.word();
        try {
            s.behavior = behavior_from_string(behavior_word);
        } catch (const std::invalid_argument& e) {
            throw ParseError(behavior_pos, e.what());
        }
        if (s.behavior == Behavior::Exploration) {
            in.expect_flag("--rwm" + si);
            s.rwm = static_cast<int>(in.integer("rwm", 1, 100));
        } else if (s.behavior == Behavior::Attraction) {
            in.expect_flag("--att" + si);
            s.att = in.real("att", 1.0, 5.0);
        } else if (s.behavior == Behavior::Repulsion) {
            in.expect_flag("--rep" + si);
            s.rep = in.real("rep", 1.0, 5.0);
        }
        in.expect_flag("--n" + si);
        const int ntrans =
            static_cast<int>(in.integer("transition count", 0, nstates == 1 ? 0 : 4));
        s.transitions.resize(ntrans);
        for (int j = 0; j < ntrans; ++j) {
            const std::string sij = si + "x" + format_int(j);
            TransitionSpec& t = s.transitions[j];
            in.expect_flag("--n" + sij);
            const std::size_t target_pos = in.pos();
            t.target = static_cast<int>(in.integer("transition target", 0, nstates - 1));
            if (t.target == i)
                throw ParseError(target_pos, "transition target equals its own state");
            in.expect_flag("--c" + sij);
            const std::size_t cond_pos = in.pos();
            const std::string cond_word = in.word();
            try {
                t.condition = condition_from_string(cond_word);
            } catch (const std::invalid_argument& e) {
                throw ParseError(cond_pos, e.what());
            }
            switch (t.condition) {
                case Condition::BlackFloor:
                case Condition::GrayFloor:
                case Condition::WhiteFloor:
                case Condition::FixedProbability:
                    in.expect_flag("--p" + sij);
                    t.beta = in.real("beta", 0.0, 1.0);
                    break;
                case Condition::NeighborCount:
                case Condition::InvertedNeighborCount:
                    in.expect_flag("--w" + sij);
                    t.eta = in.real("eta", 0.0, 20.0);
                    in.expect_flag("--t" + sij);
                    t.xi = static_cast<int>(in.integer("xi", 0, 10));
                    break;
            }
        }
    }
    if (!in.done()) throw ParseError(in.pos(), "unexpected trailing token");
    validate(fsm);
    return fsm;
}

FsmDescriptor fsm_from_flags(const std::string& text) { return fsm_from_tokens(tokenize(text)); }

}  // namespace swarmlab
