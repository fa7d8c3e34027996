#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "swarmlab/fsm.hpp"

using namespace swarmlab;

namespace {

SensorSnapshot calm() {
    SensorSnapshot s;
    s.swarm_size = 3;
    return s;
}

FsmDescriptor single(Behavior b) {
    FsmDescriptor fsm;
    fsm.states.resize(1);
    fsm.states[0].behavior = b;
    return fsm;
}

TransitionSpec fixed(int target, double beta) {
    TransitionSpec t;
    t.target = target;
    t.condition = Condition::FixedProbability;
    t.beta = beta;
    return t;
}

}  // namespace

TEST_CASE("name round trips") {
    for (int i = 0; i < 6; ++i) {
        const Behavior b = static_cast<Behavior>(i);
        CHECK(behavior_from_string(to_string(b)) == b);
        const Condition c = static_cast<Condition>(i);
        CHECK(condition_from_string(to_string(c)) == c);
    }
    CHECK_THROWS_AS(behavior_from_string("swim"), std::invalid_argument);
    CHECK_THROWS_AS(condition_from_string("fullmoon"), std::invalid_argument);
}

TEST_CASE("descriptor validation") {
    CHECK_NOTHROW(validate(single(Behavior::Stop)));

    FsmDescriptor none;
    CHECK_THROWS_AS(validate(none), std::invalid_argument);

    FsmDescriptor five;
    five.states.resize(5);
    CHECK_THROWS_AS(validate(five), std::invalid_argument);

    FsmDescriptor lone = single(Behavior::Stop);
    lone.states[0].transitions.push_back(fixed(0, 0.5));
    CHECK_THROWS_AS(validate(lone), std::invalid_argument);  // nowhere to go

    FsmDescriptor pair;
    pair.states.resize(2);
    pair.states[0].transitions.push_back(fixed(0, 0.5));  // self loop
    CHECK_THROWS_AS(validate(pair), std::invalid_argument);
    pair.states[0].transitions[0].target = 2;  // out of range
    CHECK_THROWS_AS(validate(pair), std::invalid_argument);
    pair.states[0].transitions[0].target = 1;
    CHECK_NOTHROW(validate(pair));
    for (int i = 0; i < 5; ++i) pair.states[1].transitions.push_back(fixed(0, 0.1));
    CHECK_THROWS_AS(validate(pair), std::invalid_argument);  // more than 4

    FsmDescriptor bad_param = single(Behavior::Exploration);
    bad_param.states[0].rwm = 0;
    CHECK_THROWS_AS(validate(bad_param), std::invalid_argument);
    bad_param.states[0].rwm = 101;
    CHECK_THROWS_AS(validate(bad_param), std::invalid_argument);

    // Out-of-range parameters of unused behaviors are ignored.
    FsmDescriptor unused = single(Behavior::Stop);
    unused.states[0].rwm = 0;
    CHECK_NOTHROW(validate(unused));

    FsmDescriptor att = single(Behavior::Attraction);
    att.states[0].att = 0.5;
    CHECK_THROWS_AS(validate(att), std::invalid_argument);
    att.states[0].att = 5.0;
    CHECK_NOTHROW(validate(att));

    FsmDescriptor beta_range;
    beta_range.states.resize(2);
    beta_range.states[0].transitions.push_back(fixed(1, 1.5));
    CHECK_THROWS_AS(validate(beta_range), std::invalid_argument);

    FsmDescriptor eta_range;
    eta_range.states.resize(2);
    TransitionSpec nc;
    nc.target = 1;
    nc.condition = Condition::NeighborCount;
    nc.eta = 21.0;
    nc.xi = 5;
    eta_range.states[0].transitions.push_back(nc);
    CHECK_THROWS_AS(validate(eta_range), std::invalid_argument);
    eta_range.states[0].transitions[0].eta = 5.0;
    eta_range.states[0].transitions[0].xi = 11;
    CHECK_THROWS_AS(validate(eta_range), std::invalid_argument);
}

TEST_CASE("transition probabilities") {
    SensorSnapshot snap = calm();

    TransitionSpec t = fixed(1, 0.37);
    CHECK(transition_probability(t, snap) == 0.37);

    t.condition = Condition::BlackFloor;
    t.beta = 0.8;
    snap.gnd = GroundColor::Black;
    CHECK(transition_probability(t, snap) == 0.8);
    snap.gnd = GroundColor::Gray;
    CHECK(transition_probability(t, snap) == 0.0);
    t.condition = Condition::GrayFloor;
    CHECK(transition_probability(t, snap) == 0.8);
    t.condition = Condition::WhiteFloor;
    CHECK(transition_probability(t, snap) == 0.0);
    snap.gnd = GroundColor::White;
    CHECK(transition_probability(t, snap) == 0.8);

    // Sigmoid in the neighbor count: half at n == xi, saturating up.
    t.condition = Condition::NeighborCount;
    t.eta = 2.0;
    t.xi = 2;
    snap.neighbor_count = 2;
    CHECK(transition_probability(t, snap) == doctest::Approx(0.5));
    snap.neighbor_count = 0;
    CHECK(transition_probability(t, snap) == doctest::Approx(1.0 / (1.0 + std::exp(4.0))));
    snap.neighbor_count = 2;  // restore a valid pairing below
    t.condition = Condition::InvertedNeighborCount;
    CHECK(transition_probability(t, snap) == doctest::Approx(0.5));
    snap.neighbor_count = 1;
    const double up = 1.0 / (1.0 + std::exp(2.0 * (2.0 - 1.0)));
    CHECK(transition_probability(t, snap) == doctest::Approx(1.0 - up));
}

TEST_CASE("behavior outputs") {
    const PlatformSpec p = epuck_spec();
    const double v = p.v_max;
    Rng rng(3);
    SensorSnapshot snap = calm();

    SUBCASE("stop is zero") {
        const FsmDescriptor fsm = single(Behavior::Stop);
        FsmRuntime run(fsm, p);
        CHECK(run.tick(snap, rng) == ActuatorCommand{0.0, 0.0});
    }

    SUBCASE("exploration goes straight in the open") {
        const FsmDescriptor fsm = single(Behavior::Exploration);
        FsmRuntime run(fsm, p);
        for (int i = 0; i < 10; ++i) CHECK(run.tick(snap, rng) == ActuatorCommand{v, v});
    }

    SUBCASE("exploration turns away from a frontal obstacle") {
        FsmDescriptor fsm = single(Behavior::Exploration);
        fsm.states[0].rwm = 100;
        FsmRuntime run(fsm, p);
        snap.prox = {0.5, 0.3};  // obstacle ahead, slightly left
        // Turn lengths are drawn from [0, 100]; a zero draw goes straight for
        // the tick, anything else turns clockwise (obstacle on the left).
        ActuatorCommand cmd = run.tick(snap, rng);
        for (int i = 0; i < 50 && !(cmd == ActuatorCommand{v, -v}); ++i) cmd = run.tick(snap, rng);
        CHECK(cmd == ActuatorCommand{v, -v});
        // A turn in progress keeps its direction even once the view clears.
        snap.prox = {0.0, 0.0};
        cmd = run.tick(snap, rng);
        const bool still_turning = cmd == ActuatorCommand{v, -v};
        const bool resumed = cmd == ActuatorCommand{v, v};
        CHECK((still_turning || resumed));
    }

    SUBCASE("a rear obstacle does not trigger avoidance") {
        const FsmDescriptor fsm = single(Behavior::Exploration);
        FsmRuntime run(fsm, p);
        snap.prox = {0.9, 2.5};  // strong, but behind
        for (int i = 0; i < 10; ++i) CHECK(run.tick(snap, rng) == ActuatorCommand{v, v});
    }

    SUBCASE("phototaxis steers toward the light") {
        const FsmDescriptor fsm = single(Behavior::Phototaxis);
        FsmRuntime run(fsm, p);
        snap.light = {0.5, kPi / 2.0};  // light hard left
        const ActuatorCommand cmd = run.tick(snap, rng);
        CHECK(cmd.left < cmd.right);  // counterclockwise
        snap.light = {0.5, 0.0};
        CHECK(run.tick(snap, rng) == ActuatorCommand{v, v});
        snap.light = {0.0, 0.0};  // nothing to see: cruise
        CHECK(run.tick(snap, rng) == ActuatorCommand{v, v});
    }

    SUBCASE("antiphototaxis steers away") {
        const FsmDescriptor fsm = single(Behavior::AntiPhototaxis);
        FsmRuntime run(fsm, p);
        snap.light = {0.5, kPi / 2.0};
        const ActuatorCommand cmd = run.tick(snap, rng);
        CHECK(cmd.left > cmd.right);  // clockwise, away from a light on the left
    }

    SUBCASE("attraction and repulsion use the neighbor vector") {
        snap.neighbor_count = 2;
        snap.neighbors = {0.8, -kPi / 2.0};  // swarm off to the right
        FsmDescriptor fsm = single(Behavior::Attraction);
        fsm.states[0].att = 2.0;
        FsmRuntime attract(fsm, p);
        const ActuatorCommand toward = attract.tick(snap, rng);
        CHECK(toward.left > toward.right);  // turn right, toward them

        FsmDescriptor rep = single(Behavior::Repulsion);
        rep.states[0].rep = 2.0;
        FsmRuntime repel(rep, p);
        const ActuatorCommand away = repel.tick(snap, rng);
        CHECK(away.left < away.right);

        snap.neighbor_count = 0;
        snap.neighbors = {0.0, 0.0};
        CHECK(attract.tick(snap, rng) == ActuatorCommand{v, v});
        CHECK(repel.tick(snap, rng) == ActuatorCommand{v, v});
    }

    SUBCASE("proximity repels the steering behaviors") {
        const FsmDescriptor fsm = single(Behavior::Phototaxis);
        FsmRuntime run(fsm, p);
        snap.light = {0.4, 0.0};
        snap.prox = {0.9, 0.0};  // wall dead ahead outweighs the light
        const ActuatorCommand cmd = run.tick(snap, rng);
        CHECK(cmd.left < 0.0);  // backing off
        CHECK(cmd.right < 0.0);
    }
}

TEST_CASE("transitions fire by declaration order, one draw each") {
    const PlatformSpec p = epuck_spec();
    SensorSnapshot snap = calm();

    FsmDescriptor fsm;
    fsm.states.resize(3);
    fsm.states[0].behavior = Behavior::Stop;
    fsm.states[0].transitions.push_back(fixed(1, 0.0));  // never
    fsm.states[0].transitions.push_back(fixed(2, 1.0));  // always
    fsm.states[1].behavior = Behavior::Exploration;
    fsm.states[2].behavior = Behavior::Exploration;

    SUBCASE("dead transitions are skipped but still consume a draw") {
        Rng rng(17);
        Rng replay(17);
        FsmRuntime run(fsm, p);
        run.tick(snap, rng);
        CHECK(run.current_state() == 2);
        // Exactly two uniforms for the transitions; the exploration behavior
        // in the open consumes none.
        replay.uniform();
        replay.uniform();
        CHECK(rng.next_u64() == replay.next_u64());
    }

    SUBCASE("first firing transition wins") {
        FsmDescriptor race = fsm;
        race.states[0].transitions[0].beta = 1.0;
        Rng rng(17);
        FsmRuntime run(race, p);
        run.tick(snap, rng);
        CHECK(run.current_state() == 1);
    }

    SUBCASE("reset returns to the initial state") {
        Rng rng(17);
        FsmRuntime run(fsm, p);
        run.tick(snap, rng);
        CHECK(run.current_state() == 2);
        run.reset();
        CHECK(run.current_state() == 0);
    }

    SUBCASE("the new state acts on the same tick") {
        Rng rng(17);
        FsmRuntime run(fsm, p);
        const ActuatorCommand cmd = run.tick(snap, rng);
        // Landed in exploration with a clear view: full speed, not stop.
        CHECK(cmd == ActuatorCommand{p.v_max, p.v_max});
    }
}

TEST_CASE("floor-gated transition only fires on its color") {
    const PlatformSpec p = epuck_spec();
    FsmDescriptor fsm;
    fsm.states.resize(2);
    fsm.states[0].behavior = Behavior::Exploration;
    TransitionSpec t;
    t.target = 1;
    t.condition = Condition::BlackFloor;
    t.beta = 1.0;
    fsm.states[0].transitions.push_back(t);
    fsm.states[1].behavior = Behavior::Stop;

    Rng rng(4);
    FsmRuntime run(fsm, p);
    SensorSnapshot snap = calm();
    snap.gnd = GroundColor::Gray;
    for (int i = 0; i < 20; ++i) run.tick(snap, rng);
    CHECK(run.current_state() == 0);
    snap.gnd = GroundColor::Black;
    run.tick(snap, rng);
    CHECK(run.current_state() == 1);
}
