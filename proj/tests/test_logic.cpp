#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "brouwer/logic.hpp"

#include <functional>
#include <random>

using namespace brouwer;

namespace {

/// Naive forcing straight from the clauses; knows nothing of bitmasks.
struct NaiveModel {
    std::vector<int> parent;
    std::vector<std::set<std::string>> atoms;

    std::vector<int> kids(int w) const {
        std::vector<int> out;
        for (int v = 0; v < int(parent.size()); ++v)
            if (parent[v] == w)
                out.push_back(v);
        return out;
    }
    std::vector<int> step(const std::vector<int> &from) const {
        std::set<int> out;
        for (int w : from) {
            auto k = kids(w);
            if (k.empty())
                out.insert(w);
            out.insert(k.begin(), k.end());
        }
        return {out.begin(), out.end()};
    }
    bool below(int w, int v) const { // v is w or under w
        for (; v >= 0; v = parent[v])
            if (v == w)
                return true;
        return false;
    }
    int depth() const {
        int d = 0;
        for (int v = 0; v < int(parent.size()); ++v) {
            int k = 0;
            for (int u = v; parent[u] >= 0; u = parent[u])
                ++k;
            d = std::max(d, k);
        }
        return d;
    }
    bool force(int w, const Formula &f, int bound = -1) const {
        using K = Formula::Kind;
        switch (f.kind) {
        case K::Atom:
            return atoms[w].count(f.name) != 0;
        case K::Bottom:
            return false;
        case K::And:
            return force(w, *f.lhs, bound) && force(w, *f.rhs, bound);
        case K::Or:
            return force(w, *f.lhs, bound) || force(w, *f.rhs, bound);
        case K::Implies:
            for (int v = 0; v < int(parent.size()); ++v)
                if (below(w, v) && force(v, *f.lhs, bound) && !force(v, *f.rhs, bound))
                    return false;
            return true;
        case K::Box: {
            std::vector<int> at{w};
            for (std::uint64_t i = 0; i < f.n; ++i)
                at = step(at);
            for (int v : at)
                if (!force(v, *f.lhs, bound))
                    return false;
            return true;
        }
        case K::SomeStage: {
            int lim = bound < 0 ? depth() + 1 : bound;
            std::vector<int> at{w};
            for (int n = 1; n <= lim; ++n) {
                at = step(at);
                bool all = true;
                for (int v : at)
                    all = all && force(v, *f.lhs, bound);
                if (all)
                    return true;
            }
            return false;
        }
        }
        return false;
    }
};

NaiveModel naive(const StageTree &m) { return {m.parent, m.atoms}; }

StageTree with_valuation(const StageTree &frame, const std::vector<std::string> &names,
                         const std::vector<std::uint64_t> &masks) {
    StageTree m = frame;
    for (std::size_t k = 0; k < names.size(); ++k)
        for (std::size_t w = 0; w < m.size(); ++w)
            if (masks[k] >> w & 1)
                m.atoms[w].insert(names[k]);
    return m;
}

/// Every monotone two-atom model on trees with at most `max_nodes` nodes.
void for_each_model(std::size_t max_nodes, const std::function<void(const StageTree &)> &fn) {
    for (std::size_t n = 1; n <= max_nodes; ++n)
        for (const auto &p : enumerate_trees(n)) {
            auto frame = StageTree::from_parents(p);
            auto ups = up_sets(frame);
            for (auto a : ups)
                for (auto b : ups)
                    fn(with_valuation(frame, {"p", "q"}, {a, b}));
        }
}

FormulaPtr random_formula(std::mt19937_64 &rng, int depth, bool allow_modal) {
    int pick = int(rng() % (depth <= 0 ? 3 : (allow_modal ? 9 : 7)));
    switch (pick) {
    case 0:
        return atom(rng() % 2 ? "p" : "q_1", rng() % 5 == 0);
    case 1:
        return rng() % 4 ? atom("r") : bottom();
    case 2:
        return atom("s");
    case 3:
        return neg(random_formula(rng, depth - 1, allow_modal));
    case 4:
        return conj(random_formula(rng, depth - 1, allow_modal), random_formula(rng, depth - 1, allow_modal));
    case 5:
        return disj(random_formula(rng, depth - 1, allow_modal), random_formula(rng, depth - 1, allow_modal));
    case 6:
        return imp(random_formula(rng, depth - 1, allow_modal), random_formula(rng, depth - 1, allow_modal));
    case 7:
        return box(1 + rng() % 4, random_formula(rng, depth - 1, false));
    default:
        return some_stage(random_formula(rng, depth - 1, false));
    }
}

StageTree fork3() {
    auto m = StageTree::from_parents({-1, 0, 0});
    m.atoms[1].insert("p");
    return m;
}

} // namespace

TEST_CASE("parser examples") {
    auto a = parse_formula("[2](p | ~p)");
    REQUIRE(a->kind == Formula::Kind::Box);
    CHECK(a->n == 2);
    CHECK(equal(a, box(2, disj(atom("p"), neg(atom("p"))))));

    auto b = parse_formula("<*>p -> p");
    CHECK(equal(b, imp(some_stage(atom("p")), atom("p"))));

    CHECK(equal(parse_formula("a -> b -> c"), imp(atom("a"), imp(atom("b"), atom("c")))));
    CHECK(equal(parse_formula("a & b | c"), disj(conj(atom("a"), atom("b")), atom("c"))));
    CHECK(equal(parse_formula("~a & b"), conj(neg(atom("a")), atom("b"))));
    CHECK(equal(parse_formula("a <-> b"), iff(atom("a"), atom("b"))));
    CHECK(equal(parse_formula("_|_"), bottom()));
    CHECK(equal(parse_formula("|a"), tested_now(atom("a"))));
    CHECK(equal(parse_formula("a|"), tested_later(atom("a"))));
    CHECK(parse_formula("alpha!")->lawlike);
    CHECK(equal(parse_formula("alpha!"), atom("alpha")));

    try {
        parse_formula("[1][1]p");
        FAIL("nested box accepted");
    } catch (const ParseError &e) {
        CHECK(std::string(e.what()).find("box-free") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_formula("<*>[1]p"), ParseError);
    CHECK_THROWS_AS(parse_formula("[0]p"), ParseError);
    CHECK_THROWS_AS(parse_formula("p &"), ParseError);
    CHECK_THROWS_AS(parse_formula("(p"), ParseError);
    CHECK_THROWS_AS(parse_formula("P"), ParseError);
    try {
        parse_formula("p & & q");
    } catch (const ParseError &e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS(box(1, box(1, atom("p"))));
}

TEST_CASE("print/parse round trip") {
    std::mt19937_64 rng(17);
    int n = 0;
    for (int i = 0; n < 50 && i < 1000; ++i) {
        auto f = random_formula(rng, 4, true);
        if (size(*f) < 3)
            continue;
        ++n;
        auto text = print(f);
        auto g = parse_formula(text);
        CAPTURE(text);
        CHECK(equal(f, g));
        CHECK(print(g) == text);
    }
    CHECK(n == 50);
}

TEST_CASE("formula utilities") {
    auto f = parse_formula("p & [2]q -> <*>(p | r)");
    CHECK(atoms_of(*f) == std::set<std::string>{"p", "q", "r"});
    CHECK_FALSE(box_free(*f));
    CHECK(box_free(*parse_formula("p -> q")));
    CHECK(is_negation(*parse_formula("~p")));
    CHECK(equal(substitute(parse_formula("p -> p"), "p", parse_formula("q & r")), parse_formula("q & r -> q & r")));
}

TEST_CASE("forcing examples") {
    auto single = StageTree::from_parents({-1});
    single.atoms[0].insert("p");
    CHECK(forces(single, 0, *parse_formula("[3]p")));

    auto m = fork3();
    CHECK_FALSE(forces(m, 0, *parse_formula("[1]p")));
    CHECK_FALSE(forces(m, 0, *parse_formula("~[1]p")));
    CHECK(forces(m, 1, *parse_formula("[1]p")));
    CHECK_FALSE(forces(m, 0, *parse_formula("[1]p | ~[1]p")));

    auto chain = StageTree::from_parents({-1, 0});
    chain.atoms[1].insert("p");
    CHECK(forces(chain, 0, *parse_formula("<*>p")));
    CHECK_FALSE(forces(chain, 0, *parse_formula("<*>p -> p")));
}

TEST_CASE("forcing agrees with a naive evaluator") {
    std::mt19937_64 rng(4);
    std::vector<FormulaPtr> fs;
    for (int i = 0; i < 60; ++i)
        fs.push_back(random_formula(rng, 3, true));
    for (auto &f : fs)
        f = substitute(substitute(f, "q_1", atom("q")), "r", atom("p"));
    for_each_model(4, [&](const StageTree &m) {
        Evaluator ev(m);
        auto nm = naive(m);
        for (const auto &f : fs) {
            auto mask = ev.extension(*f);
            REQUIRE(mask == extension(m, *f));
            for (int w = 0; w < int(m.size()); ++w) {
                bool want = nm.force(w, *f);
                REQUIRE(forces(m, w, *f) == want);
                REQUIRE(bool((mask >> w) & 1) == want);
            }
        }
    });
}

TEST_CASE("monotonicity, box persistence and stage-bound completeness") {
    auto fs = enumerate_box_free({"p", "q"}, 1);
    auto modal = enumerate_modal({"p", "q"}, 1, 3);
    fs.insert(fs.end(), modal.begin(), modal.end());
    for_each_model(4, [&](const StageTree &m) {
        Evaluator ev(m);
        auto nm = naive(m);
        for (const auto &f : fs) {
            auto mask = ev.extension(*f);
            REQUIRE(ev.is_up_set(mask));
            if (f->kind == Formula::Kind::Box || f->kind == Formula::Kind::SomeStage)
                for (int w = 1; w < int(m.size()); ++w)
                    if (mask >> m.parent[w] & 1)
                        REQUIRE(((mask >> w) & 1) != 0);
        }
    });
    // evaluating <*> to twice the depth changes nothing
    std::mt19937_64 rng(8);
    for_each_model(4, [&](const StageTree &m) {
        auto nm = naive(m);
        for (int i = 0; i < 4; ++i) {
            auto f = some_stage(random_formula(rng, 2, false));
            int d = int(m.depth());
            for (int w = 0; w < int(m.size()); ++w)
                REQUIRE(nm.force(w, *f) == nm.force(w, *f, 2 * d + 2));
            REQUIRE(forces(m, 0, *f) == forces(m, 0, *f, 2 * d + 2));
        }
    });
}

TEST_CASE("model files") {
    auto m = StageTree::from_json(R"({"nodes":[{"id":"r","parent":null,"atoms":[]},
        {"id":"a","parent":"r","atoms":["p"]},{"id":"b","parent":"r","atoms":[]}]})");
    CHECK(m.size() == 3);
    CHECK(m.index_of("a") == 1);
    CHECK_FALSE(forces(m, m.index_of("r"), *parse_formula("[1]p | ~[1]p")));
    auto again = StageTree::from_json(m.to_json());
    CHECK(again.parent == m.parent);
    CHECK(again.atoms == m.atoms);
    CHECK(again.ids == m.ids);

    auto unordered = StageTree::from_json(R"({"nodes":[{"id":2,"parent":1,"atoms":["p"]},
        {"id":1,"parent":null,"atoms":[]}]})");
    CHECK(unordered.size() == 2);
    CHECK(forces(unordered, unordered.index_of("1"), *parse_formula("<*>p")));

    CHECK_THROWS(StageTree::from_json(R"({"nodes":[{"id":1,"parent":null,"atoms":["p"]},{"id":2,"parent":1,"atoms":[]}]})"));
    CHECK_THROWS(StageTree::from_json(R"({"nodes":[]})"));
    CHECK_THROWS(StageTree::from_json(R"({"nodes":[{"id":1,"parent":7,"atoms":[]}]})"));
    CHECK_THROWS(StageTree::from_json("not json"));
    CHECK_THROWS(StageTree::load("no/such/model.json"));

    auto bad = StageTree::from_parents({-1, 0});
    bad.atoms[0].insert("p");
    auto v = check_monotone(bad);
    REQUIRE(v);
    CHECK(v->atom == "p");
    CHECK(v->node == "1");
    CHECK(v->parent == "0");
    CHECK_FALSE(check_monotone(fork3()));
}

TEST_CASE("tree and valuation enumeration") {
    std::vector<std::size_t> counts;
    for (std::size_t n = 1; n <= 7; ++n)
        counts.push_back(enumerate_trees(n).size());
    CHECK(counts == std::vector<std::size_t>{1, 1, 2, 4, 9, 20, 48});
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto &p : enumerate_trees(n)) {
            auto frame = StageTree::from_parents(p);
            Evaluator ev(frame);
            std::size_t brute = 0;
            for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
                bool up = true;
                for (std::size_t w = 1; w < n; ++w)
                    if ((s >> p[w] & 1) && !(s >> w & 1))
                        up = false;
                brute += up;
            }
            auto ups = up_sets(frame);
            CHECK(ups.size() == brute);
            CHECK(std::is_sorted(ups.begin(), ups.end()));
            for (auto u : ups)
                CHECK(ev.is_up_set(u));
        }
}

TEST_CASE("principle sweeps") {
    SweepBounds b; // 5 nodes, 2 atoms, box 3
    for (auto s : {Schema::IC1, Schema::IC2, Schema::IC3, Schema::MD}) {
        auto r = validity_sweep(s, b);
        CAPTURE(to_string(s));
        CHECK(r.valid);
        CHECK(r.trees == 1 + 1 + 2 + 4 + 9);
        CHECK(r.models == 1254);
        CHECK(expected_valid(s));
    }
    auto cs4 = validity_sweep(Schema::CS4, b);
    REQUIRE_FALSE(cs4.valid);
    REQUIRE(cs4.countermodel);
    CHECK(cs4.countermodel->model.size() == 3);
    CHECK(cs4.countermodel->id == "cs4/3n/-,0,0/p:1;q:/n=1;phi=p");
    auto cs5 = validity_sweep(Schema::CS5, b);
    REQUIRE(cs5.countermodel);
    CHECK(cs5.countermodel->model.size() == 2);
    CHECK(cs5.countermodel->id == "cs5/2n/-,0/p:1;q:/phi=p");

    SweepBounds one{3, 1, 3, 2};
    CHECK(validity_sweep(Schema::CS4, one).countermodel->id == "cs4/3n/-,0,0/p:1/n=1;phi=p");
    CHECK(validity_sweep(Schema::CS5, one).countermodel->id == "cs5/2n/-,0/p:1/phi=p");

    for (const auto &r : {cs4, cs5}) {
        const auto &cm = *r.countermodel;
        CHECK_FALSE(forces(cm.model, cm.node, *cm.instance));
        CHECK_FALSE(naive(cm.model).force(cm.node, *cm.instance));
        CHECK(equal(cm.instance, instantiate(r.schema, cm.phi, cm.boxes)));
        CHECK_FALSE(check_monotone(cm.model));
    }
    // determinism
    CHECK(validity_sweep(Schema::CS4, b).countermodel->id == cs4.countermodel->id);
    auto again = validity_sweep(Schema::IC1, b);
    CHECK(again.checks == validity_sweep(Schema::IC1, b).checks);
}

TEST_CASE("sweep limits") {
    SweepBounds huge{9, 4, 16, 2};
    try {
        validity_sweep(Schema::IC1, huge);
        FAIL("expected a refusal");
    } catch (const ResourceRefusal &e) {
        CHECK(e.size() > 5e9);
        CHECK(std::string(e.what()).find("refused") != std::string::npos);
    }
    CHECK_THROWS_AS(validity_sweep(Schema::IC1, SweepBounds{0, 1, 1, 1}), std::invalid_argument);
    CHECK(sweep_size(Schema::IC1, SweepBounds{}) > sweep_size(Schema::IC3, SweepBounds{}));
}

TEST_CASE("schema helpers and suite") {
    CHECK(parse_schema("cs4") == Schema::CS4);
    CHECK(parse_schema("md") == Schema::MD);
    CHECK_THROWS_AS(parse_schema("cs6"), std::invalid_argument);
    CHECK(box_parameters(Schema::IC1) == 2);
    CHECK(box_parameters(Schema::CS4) == 1);
    CHECK(box_parameters(Schema::CS5) == 0);
    CHECK(schema_text(Schema::CS5) == "<*>phi -> phi");
    CHECK(equal(instantiate(Schema::IC1, atom("p"), {1, 2}), parse_formula("[1]p -> [3]p")));
    CHECK_FALSE(expected_valid(Schema::CS5));

    auto rep = principle_suite(SweepBounds{4, 2, 2, 1});
    CHECK(rep.ok());
    CHECK(rep.entries.size() == 6);
    CHECK_FALSE(rep.restricted_cs5_note.empty());
}
