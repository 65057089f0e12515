"""Engine behaviour plus oracle-agreement properties."""

from __future__ import annotations

import itertools
import random
import stat
import textwrap

import pytest
from hypothesis import given, settings, strategies as st

from symdrift.errors import (
    AmbiguousOptions,
    CSPSpecError,
    DomainTooLarge,
    ExternalUnavailable,
    NoEntailedOption,
    NotHorn,
    Unsatisfiable,
)
from symdrift.fol import (
    CLOSED_WORLD,
    LogicProgram,
    SymbolRegistry,
    parse_formula,
)
from symdrift.solver import (
    ADJACENT,
    AT_POSITION,
    CSPSpec,
    Constraint,
    LEFT_OF,
    NOT_AT_POSITION,
    Option,
    RIGHT_OF,
    Verdict,
    emit_prover9,
    enumerate_models,
    forward_chain_cwa,
    normalize_statement,
    prove_resolution,
    run_external_prover,
    solve_csp,
)

from .helpers import herbrand_padding, random_decidable_program


def _program(premises: list[str], query: str, mode: str = "open_world") -> LogicProgram:
    r = SymbolRegistry()
    parsed = tuple(parse_formula(t, r) for t in premises)
    q = parse_formula(query, r)
    return LogicProgram(r, parsed, q, mode).validate()


class TestEnumeration:
    def test_modus_ponens(self):
        p = _program(["Kind(Anne)", "all x (Kind(x) -> Smart(x))"], "Smart(Anne)")
        assert enumerate_models(p).value == "proved"

    def test_unconstrained_predicate_unknown(self):
        p = _program(["Kind(Anne)", "all x (Kind(x) -> Smart(x))"], "Tall(Anne)")
        assert enumerate_models(p).value == "unknown"

    def test_negated_fact_disproved(self):
        p = _program(["~Kind(Anne)"], "Kind(Anne)")
        assert enumerate_models(p).value == "disproved"

    def test_domain_guard(self):
        r = SymbolRegistry()
        pred = r.declare("R", 3, "predicate")
        consts = [r.declare(f"a{i}", 0, "constant") for i in range(4)]
        atoms = " & ".join(f"R(a0, a{i % 4}, a{(i + 1) % 4})" for i in range(3))
        p = _program_raw(r, [atoms], "R(a0, a1, a2)")
        with pytest.raises(DomainTooLarge):
            enumerate_models(p)

    def test_empty_domain_gets_fresh_element(self):
        p = _program(["all x (Kind(x) -> Smart(x))"], "all x Kind(x)")
        assert enumerate_models(p).value == "unknown"


def _program_raw(r, premises, query):
    parsed = tuple(parse_formula(t, r) for t in premises)
    return LogicProgram(r, parsed, parse_formula(query, r)).validate()


class TestResolution:
    def test_modus_ponens(self):
        p = _program(["Kind(Anne)", "all x (Kind(x) -> Smart(x))"], "Smart(Anne)")
        assert prove_resolution(p).value == "proved"

    def test_implication_chain_depth5(self):
        premises = ["A0(c)"] + [f"all x (A{i}(x) -> A{i + 1}(x))" for i in range(5)]
        p = _program(premises, "A5(c)")
        verdict = prove_resolution(p)
        assert verdict.value == "proved"
        assert enumerate_models(p).value == "proved"

    def test_unrelated_query_with_tiny_budget(self):
        premises = ["A0(c)"] + [f"all x (A{i}(x) -> A{i + 1}(x))" for i in range(8)]
        p = _program(premises, "Zz(c)")
        verdict = prove_resolution(p, max_steps=2)
        assert verdict.value == "unknown"
        assert verdict.limit_hit

    def test_disproved(self):
        p = _program(["all x (Kind(x) -> Smart(x))", "~Smart(Anne)"], "Kind(Anne)")
        assert prove_resolution(p).value == "disproved"

    def test_determinism(self):
        p = _program(["Kind(Anne)", "all x (Kind(x) -> Smart(x))"], "Smart(Anne)")
        a = prove_resolution(p)
        b = prove_resolution(p)
        assert a == b

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 100_000))
    def test_oracle_agreement(self, seed):
        rng = random.Random(seed)
        p = random_decidable_program(rng)
        oracle = enumerate_models(p, herbrand_padding(p))
        verdict = prove_resolution(p)
        if oracle.value in ("proved", "disproved"):
            assert verdict.value == oracle.value
        else:
            assert verdict.value == "unknown"


class TestForwardChaining:
    def test_rule_application(self):
        p = _program(["Kind(Anne)", "all x (Kind(x) -> Smart(x))"], "Smart(Anne)",
                     CLOSED_WORLD)
        assert forward_chain_cwa(p).value == "true"

    def test_closed_world_negation(self):
        p = _program(["Kind(Anne)", "all x (Kind(x) -> Smart(x))"], "Smart(Bob)",
                     CLOSED_WORLD)
        assert forward_chain_cwa(p).value == "false"

    def test_negated_query_flips(self):
        p = _program(["Kind(Anne)"], "~Kind(Bob)", CLOSED_WORLD)
        assert forward_chain_cwa(p).value == "true"

    def test_disjunctive_head_rejected(self):
        r = SymbolRegistry()
        premise = parse_formula("all x (Kind(x) -> Smart(x) | Tall(x))", r)
        fact = parse_formula("Kind(Anne)", r)
        with pytest.raises(NotHorn):
            LogicProgram(r, (premise, fact), parse_formula("Smart(Anne)", r),
                         CLOSED_WORLD).validate()

    def test_multi_body_join(self):
        p = _program(
            ["Kind(Anne)", "Tall(Anne)", "all x (Kind(x) & Tall(x) -> Star(x))"],
            "Star(Anne)", CLOSED_WORLD)
        assert forward_chain_cwa(p).value == "true"

    def test_binary_relations_chain(self):
        p = _program(
            ["Parent(Ann, Bob)", "Parent(Bob, Cid)",
             "all x (all y (all z (Parent(x, y) & Parent(y, z) -> Grand(x, z))))"],
            "Grand(Ann, Cid)", CLOSED_WORLD)
        assert forward_chain_cwa(p).value == "true"

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 100_000))
    def test_matches_naive_saturation(self, seed):
        """Least fixed point agrees with an independent naive reimplementation."""
        rng = random.Random(seed)
        names = ["A", "B", "C", "D"]
        people = ["P1", "P2"]
        r = SymbolRegistry()
        preds = {n: r.declare(n, 1, "predicate") for n in names}
        consts = {n: r.declare(n, 0, "constant") for n in people}
        texts = []
        for _ in range(rng.randint(1, 3)):
            texts.append(f"{rng.choice(names)}({rng.choice(people)})")
        for _ in range(rng.randint(1, 4)):
            a, b = rng.sample(names, 2)
            texts.append(f"all x ({a}(x) -> {b}(x))")
        query = f"{rng.choice(names)}({rng.choice(people)})"
        p = _program_raw_mode(r, texts, query, CLOSED_WORLD)

        # naive reimplementation over (pred name, const name) pairs
        facts = {(t.split("(")[0], t.split("(")[1][:-1]) for t in texts if "all" not in t}
        rules = [(t.split("(")[1].split("(")[0], t.split("-> ")[1].split("(")[0])
                 for t in texts if "all" in t]
        changed = True
        while changed:
            changed = False
            for a, b in rules:
                for pred, person in list(facts):
                    if pred == a and (b, person) not in facts:
                        facts.add((b, person))
                        changed = True
        expected = (query.split("(")[0], query.split("(")[1][:-1]) in facts
        assert forward_chain_cwa(p).value == ("true" if expected else "false")


def _program_raw_mode(r, premises, query, mode):
    parsed = tuple(parse_formula(t, r) for t in premises)
    return LogicProgram(r, parsed, parse_formula(query, r), mode).validate()


class TestCsp:
    def test_unique_ordering(self):
        spec = CSPSpec(["A", "B", "C"], [
            Constraint(LEFT_OF, ("A", "B")), Constraint(LEFT_OF, ("B", "C")),
        ])
        verdict = solve_csp(spec, [Option("A", 1)])
        assert verdict.value == "option" and verdict.option_index == 0

    def test_cycle_unsatisfiable(self):
        spec = CSPSpec(["A", "B"], [
            Constraint(LEFT_OF, ("A", "B")), Constraint(LEFT_OF, ("B", "A")),
        ])
        with pytest.raises(Unsatisfiable):
            solve_csp(spec, [Option("A", 1)])

    def test_ambiguous_options(self):
        spec = CSPSpec(["A", "B"], [Constraint(LEFT_OF, ("A", "B"))])
        with pytest.raises(AmbiguousOptions):
            solve_csp(spec, [Option("A", 1), Option("B", 2)])

    def test_no_entailed_option(self):
        spec = CSPSpec(["A", "B"], [])
        with pytest.raises(NoEntailedOption):
            solve_csp(spec, [Option("A", 1)])

    def test_undeclared_object_rejected(self):
        spec = CSPSpec(["A", "B"], [Constraint(LEFT_OF, ("A", "Z"))])
        with pytest.raises(CSPSpecError):
            solve_csp(spec, [Option("A", 1)])

    def test_mixed_constraint_kinds(self):
        spec = CSPSpec(["A", "B", "C", "D"], [
            Constraint(AT_POSITION, ("D", 4)),
            Constraint(ADJACENT, ("A", "B")),
            Constraint(NOT_AT_POSITION, ("C", 1)),
            Constraint(RIGHT_OF, ("B", "A")),
        ])
        verdict = solve_csp(spec, [Option("D", 4)])
        assert verdict.option_index == 0

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 100_000))
    def test_matches_exhaustive_permutation_filter(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 6)
        objects = [f"O{i}" for i in range(n)]
        constraints = []
        for _ in range(rng.randint(0, 4)):
            kind = rng.choice([LEFT_OF, RIGHT_OF, ADJACENT, AT_POSITION, NOT_AT_POSITION])
            if kind in (AT_POSITION, NOT_AT_POSITION):
                constraints.append(Constraint(kind, (rng.choice(objects), rng.randint(1, n))))
            else:
                constraints.append(Constraint(kind, tuple(rng.sample(objects, 2))))
        spec = CSPSpec(objects, constraints)

        def check(perm):
            pos = {obj: i + 1 for i, obj in enumerate(perm)}
            for c in constraints:
                if c.kind == LEFT_OF and not pos[c.args[0]] < pos[c.args[1]]:
                    return False
                if c.kind == RIGHT_OF and not pos[c.args[0]] > pos[c.args[1]]:
                    return False
                if c.kind == ADJACENT and abs(pos[c.args[0]] - pos[c.args[1]]) != 1:
                    return False
                if c.kind == AT_POSITION and pos[c.args[0]] != c.args[1]:
                    return False
                if c.kind == NOT_AT_POSITION and pos[c.args[0]] == c.args[1]:
                    return False
            return True

        brute = [
            {obj: i + 1 for i, obj in enumerate(perm)}
            for perm in itertools.permutations(objects) if check(perm)
        ]
        from symdrift.solver import iter_solutions

        mine = list(iter_solutions(spec))
        assert sorted(mine, key=sorted_items) == sorted(brute, key=sorted_items)


def sorted_items(d):
    return tuple(sorted(d.items()))


class TestProver9Adapter:
    def test_emitted_sections(self):
        p = _program(["Kind(Anne)"], "Smart(Anne)")
        text = emit_prover9(p)
        assert text.splitlines()[0] == "formulas(assumptions)."
        assert "Kind(Anne)." in text
        assert "formulas(goals)." in text
        assert text.count("end_of_list.") == 2

    def test_empty_assumptions_section_present(self):
        p = _program([], "Smart(Anne)")
        text = emit_prover9(p)
        assert text.index("formulas(assumptions).") < text.index("end_of_list.")

    def test_emitted_statements_reparse(self):
        rng = random.Random(5)
        for _ in range(10):
            p = random_decidable_program(rng)
            text = emit_prover9(p)
            body = []
            in_section = False
            for line in text.splitlines():
                if line.startswith("formulas("):
                    in_section = True
                    continue
                if line.startswith("end_of_list"):
                    in_section = False
                    continue
                if in_section and line.strip():
                    body.append(line)
            reparsed = [parse_formula(normalize_statement(s), p.registry.copy())
                        for s in body]
            assert len(reparsed) == len(p.premises) + 1

    def test_missing_binary(self):
        p = _program(["Kind(Anne)"], "Kind(Anne)")
        with pytest.raises(ExternalUnavailable):
            run_external_prover(p, "/nonexistent/prover9")

    def test_fake_binary_proof_marker(self, tmp_path):
        script = tmp_path / "fakeprover"
        script.write_text("#!/bin/sh\necho 'THEOREM PROVED'\n")
        script.chmod(script.stat().st_mode | stat.S_IEXEC)
        p = _program(["Kind(Anne)"], "Kind(Anne)")
        assert run_external_prover(p, str(script)).value == "proved"

    def test_fake_binary_no_proof_then_negated_proof(self, tmp_path):
        # Proves only when the goal line carries a negation: maps to Disproved.
        script = tmp_path / "fakeprover"
        script.write_text(textwrap.dedent("""\
            #!/bin/sh
            if grep -q -- '-Kind' "$2"; then echo 'THEOREM PROVED'; else echo 'SEARCH FAILED'; fi
        """))
        script.chmod(script.stat().st_mode | stat.S_IEXEC)
        p = _program(["Tall(Anne)"], "Kind(Anne)")
        assert run_external_prover(p, str(script)).value == "disproved"

    def test_timeout_yields_unknown_with_limit(self, tmp_path):
        script = tmp_path / "slowprover"
        script.write_text("#!/bin/sh\nsleep 5\n")
        script.chmod(script.stat().st_mode | stat.S_IEXEC)
        p = _program(["Kind(Anne)"], "Kind(Anne)")
        verdict = run_external_prover(p, str(script), timeout_s=0.3)
        assert verdict.value == "unknown" and verdict.limit_hit


class TestVerdict:
    def test_limit_requires_unknown(self):
        with pytest.raises(ValueError):
            Verdict("proved", limit_hit=True)

    def test_labels(self):
        assert Verdict("proved").label() == "true"
        assert Verdict("false").label() == "false"
        assert Verdict("option", option_index=2).label() == 2
