#include <cha/engine.hpp>
#include <cha/error.hpp>
#include <cha/parser.hpp>
#include <cha/report.hpp>
#include <cha/transforms.hpp>

#include "support/builders.hpp"
#include "support/topdown.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace cha;
using namespace cha::testing;

namespace {

std::string read_corpus(const std::string& name) {
    std::ifstream in(std::string(CHA_CORPUS_DIR) + "/" + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PredicateKey key(const std::string& name, std::size_t arity) { return {name, arity}; }

std::vector<Rational> rationals(const oracle::Tuple& t) {
    std::vector<Rational> out;
    for (long long x : t) {
        out.emplace_back(static_cast<long>(x));
    }
    return out;
}

// Some completion of the bound positions lies in `p`.
bool admits(const Polyhedron& p, const oracle::Partial& args) {
    std::vector<Constraint> fixed = p.constraints();
    for (Dim d = 0; d < args.size(); ++d) {
        if (args[d]) {
            fixed.push_back(eq(var(d), num(static_cast<long>(*args[d]))));
        }
    }
    return !Polyhedron::make(p.dimension(), fixed).is_empty();
}

// Lists as nested '.'/2 terms, for concrete runs of append/3.
Term list_of(std::size_t length) {
    Term out = Term::nil();
    for (std::size_t i = 0; i < length; ++i) {
        out = Term::cons(Term::atom("e"), std::move(out));
    }
    return out;
}

}  // namespace

TEST(Norm, Names) {
    EXPECT_EQ(parse_norm("term-size"), Norm::TermSize);
    EXPECT_EQ(parse_norm("list-length"), Norm::ListLength);
    EXPECT_FALSE(parse_norm("depth"));
    EXPECT_STREQ(norm_name(Norm::ListLength), "list-length");
}

TEST(Norm, TermSizeOfGroundCompound) {
    Term t = Term::compound("f", {Term::atom("a"), Term::atom("b")});
    EXPECT_EQ(norm_term(t, Norm::TermSize), Term::integer(1));
    EXPECT_EQ(norm_term(Term::atom("a"), Norm::TermSize), Term::integer(0));
}

TEST(Norm, VariableIsItsOwnSize) {
    for (Norm n : {Norm::TermSize, Norm::ListLength}) {
        EXPECT_EQ(norm_term(Term::variable("X"), n), Term::variable("X"));
    }
}

TEST(Norm, ListLength) {
    Term open = Term::cons(Term::variable("H"), Term::cons(Term::atom("a"), Term::variable("T")));
    EXPECT_EQ(to_string(Clause{Atom{"p", {norm_term(open, Norm::ListLength)}}, {}}), "p(T+2).");
    EXPECT_EQ(norm_term(list_of(3), Norm::ListLength), Term::integer(3));
    EXPECT_EQ(norm_term(Term::compound("f", {Term::variable("X")}), Norm::ListLength), Term::integer(0));
}

TEST(SizeAbstract, FactUnderTermSize) {
    Program p = size_abstract(parse_program("p(f(a,b))."), Norm::TermSize);
    EXPECT_EQ(to_source(p), "p(_V1) :- _V1 = 1.\n");
    Interpretation m = analyze(p, {}).interpretation;
    EXPECT_EQ(format_constrained_atom(key("p", 1), m.at(key("p", 1))), "p(A) :- 1*A=1.");
}

TEST(SizeAbstract, ArithmeticIsLeftAlone) {
    const char* source = "p(X,Y) :- Y is X + 1, X > 0.";
    EXPECT_EQ(size_abstract(parse_program(source), Norm::TermSize), parse_program(source));
}

TEST(SizeAbstract, AppendUnderListLength) {
    Program p = size_abstract(parse_program("append([],Ys,Ys). append([X|Xs],Ys,[X|Zs]) :- append(Xs,Ys,Zs)."),
                              Norm::ListLength);
    EXPECT_EQ(to_source(p),
              "append(_V1,Ys,_V2) :- _V1 = 0, _V2 = Ys.\n"
              "append(_V1,Ys,_V2) :- _V1 = Xs+1, _V2 = Zs+1, append(Xs,Ys,Zs).\n");
    Polyhedron result = analyze(p, {}).interpretation.at(key("append", 3));
    // A >= 0, C = A + B
    Polyhedron expected = Polyhedron::make(3, {ge(var(0), num(0)), eq(var(2), var(0) + var(1))});
    EXPECT_TRUE(result.equivalent(expected));

    // Every concrete append of short lists lands inside the result.
    for (std::size_t a = 0; a <= 4; ++a) {
        for (std::size_t b = 0; b <= 4; ++b) {
            oracle::Tuple sizes{static_cast<long long>(a), static_cast<long long>(b),
                                static_cast<long long>(a + b)};
            EXPECT_TRUE(result.contains(rationals(sizes)));
        }
    }
    // And the abstract program's own ground model agrees.
    oracle::GroundModel facts = oracle::ground_model(p, 12);
    ASSERT_FALSE(facts[key("append", 3)].empty());
    for (const oracle::Tuple& t : facts[key("append", 3)]) {
        EXPECT_TRUE(result.contains(rationals(t)));
    }
}

// Sizes of concrete nrev/append results are derivable in the abstraction.
TEST(SizeAbstract, SoundForConcreteLists) {
    Program source = parse_program(read_corpus("append.pl"));
    Program abstract = size_abstract(source, Norm::ListLength);
    oracle::GroundModel sizes = oracle::ground_model(abstract, 8);
    // nrev of a list of length n has length n; append adds lengths.
    for (long long n = 0; n <= 8; ++n) {
        EXPECT_TRUE(sizes[key("nrev", 2)].contains(oracle::Tuple{n, n})) << n;
    }
    for (long long a = 0; a <= 4; ++a) {
        for (long long b = 0; b <= 4; ++b) {
            EXPECT_TRUE(sizes[key("append", 3)].contains(oracle::Tuple{a, b, a + b}));
        }
    }
}

TEST(Goal, Forms) {
    Goal g = parse_goal("exp(_,10,_)");
    EXPECT_EQ(g.atom.name, "exp");
    ASSERT_EQ(g.atom.args.size(), 3u);
    for (const Term& t : g.atom.args) {
        EXPECT_TRUE(t.is_variable());
    }
    ASSERT_EQ(g.constraints.size(), 1u);
    Goal h = parse_goal("main(X,Y) :- X =< 100");
    EXPECT_EQ(h.constraints.size(), 1u);
    EXPECT_THROW(parse_goal("main(X,Y) :- q(X)"), ConfigError);
    EXPECT_THROW(parse_goal("main(X,"), ParseError);
}

TEST(QueryAnswer, SingleClause) {
    Program p = parse_program("p(X) :- X >= 0.");
    Program qa = query_answer_transform(p, parse_goal("p(X) :- X = 5"));
    EXPECT_EQ(to_source(qa),
              "p_query(X) :- X = 5.\n"
              "p_ans(X) :- p_query(X), X >= 0.\n");
    Interpretation m = analyze(qa, {}).interpretation;
    EXPECT_EQ(format_constrained_atom(key("p_ans", 1), m.at(key("p_ans", 1))), "p_ans(A) :- 1*A=5.");
}

TEST(QueryAnswer, GoalWithoutConstraintsSeedsUniverse) {
    Program qa = query_answer_transform(parse_program("p(X) :- X >= 0."), parse_goal("p(X)"));
    EXPECT_EQ(qa.clauses().front(), (Clause{Atom{"p_query", {Term::variable("X")}}, {}}));
    Interpretation m = analyze(qa, {}).interpretation;
    EXPECT_TRUE(m.at(key("p_query", 1)).is_universe());
}

TEST(QueryAnswer, UndefinedGoalIsAnError) {
    EXPECT_THROW(query_answer_transform(parse_program("p(1)."), parse_goal("q(X)")), ConfigError);
}

TEST(QueryAnswer, OnlyReachablePredicatesAndExternsKept) {
    Program p = parse_program("a(X) :- b(X), ext(X). b(1). c(2).");
    Program qa = query_answer_transform(p, parse_goal("a(X)"));
    EXPECT_EQ(to_source(qa),
              "a_query(X).\n"
              "b_query(X) :- a_query(X).\n"
              "a_ans(X) :- a_query(X), b_ans(X), ext(X).\n"
              "b_ans(_V1) :- b_query(_V1), _V1 = 1.\n");
}

TEST(QueryAnswer, Mc91Scheme) {
    Program qa = query_answer_transform(parse_program(read_corpus("mc91.clp")), parse_goal("main(X,Y)"));
    std::string text = to_source(qa);
    EXPECT_NE(text.find("mc91_query(Y,Y2) :- mc91_query(N,X), N =< 100, Y is N+11.\n"), std::string::npos) << text;
    EXPECT_NE(text.find("main_ans(X,N) :- main_query(X,N), X =< 100, mc91_ans(X,N).\n"), std::string::npos) << text;
}

// Every answer found top-down lies in goal_ans, and every selected call in the
// matching _query polyhedron.
TEST(QueryAnswer, SoundAgainstTopDownRuns) {
    struct Case {
        const char* file;
        const char* goal;
        PredicateKey root;
        std::vector<oracle::Partial> inputs;
    };
    std::vector<oracle::Partial> mc91_inputs;
    for (long long x = 60; x <= 110; x += 5) {
        mc91_inputs.push_back({x, std::nullopt});
    }
    std::vector<oracle::Partial> exp_inputs;
    for (long long x = 1; x <= 3; ++x) {
        exp_inputs.push_back({x, 10, std::nullopt});
    }
    std::vector<Case> cases{
        {"mc91.clp", "main(X,Y)", key("main", 2), mc91_inputs},
        {"mc91_two_versions.clp", "main(X,Y)", key("main", 2), mc91_inputs},
        {"exp.clp", "exp(_,10,_)", key("exp", 3), exp_inputs},
    };
    for (const Case& c : cases) {
        Program p = parse_program(read_corpus(c.file));
        Program qa = query_answer_transform(p, parse_goal(c.goal));
        AnalysisConfig cfg;
        cfg.narrow_iters = 1;
        Interpretation m = analyze(qa, cfg).interpretation;
        std::size_t found = 0;
        for (const oracle::Partial& input : c.inputs) {
            oracle::TopDown run(p, 400);
            auto answers = run.solve(c.root, input);
            found += answers.size();
            for (const oracle::Tuple& t : answers) {
                ASSERT_TRUE(m.contains(key(answer_name(c.root.name), c.root.arity)));
                EXPECT_TRUE(m.at(key(answer_name(c.root.name), c.root.arity)).contains(rationals(t))) << c.file;
            }
            for (const oracle::CallRecord& call : run.calls()) {
                PredicateKey q = key(query_name(call.predicate.name), call.predicate.arity);
                ASSERT_TRUE(m.contains(q)) << to_string(q);
                EXPECT_TRUE(admits(m.at(q), call.args)) << c.file << " " << to_string(q);
            }
        }
        EXPECT_GT(found, 0u) << c.file;
    }
}
