"""Translator implementations: gold, naive, split-adversary, and LLM-backed.

All of them return a TranslatorOutput carrying the program (or a parse
failure), the span-to-symbol ledger the provenance aligner consumes, and any
table/trace produced by table-guided translation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import MissingGold, TranslationFailure
from ..fol.render import render_formula
from ..fol.terms import (
    Atom,
    CLOSED_WORLD,
    CONSTANT,
    Const,
    Formula,
    LogicProgram,
    Not,
    PREDICATE,
    SymbolRegistry,
    map_atoms,
)
from ..mental.oracles import EquivalenceOracle
from ..mental.table import MentalTable, normalize_expression
from ..mental.translate import Proposal, TraceEvent, translate_with_mental
from ..problem import DiversifiedProblem, Problem, QUESTION_UNIT
from ..solver.csp import CSPSpec, Constraint, Option
from .config import TranslatorConfig
from .prompts import PromptLibrary

SpanKey = tuple[int, int, int]


@dataclass
class TranslatorOutput:
    raw_output: str
    program: LogicProgram | CSPSpec | None
    parse_error: str | None = None
    span_symbols: dict[SpanKey, str] = field(default_factory=dict)
    options: list[Option] = field(default_factory=list)
    table: MentalTable | None = None
    trace: tuple[TraceEvent, ...] = ()
    tokens_in: int = 0
    tokens_out: int = 0


def _camel(words: str) -> str:
    parts = re.findall(r"[A-Za-z0-9]+", words)
    return "".join(p[:1].upper() + p[1:].lower() for p in parts) or "Expr"


def _unwrap(item: Problem | DiversifiedProblem) -> tuple[Problem, DiversifiedProblem | None]:
    if isinstance(item, DiversifiedProblem):
        return item.problem, item
    return item, None


# ---------------------------------------------------------------------------
# Template proposal extraction (shared by naive and table-guided translation)

_SUBJECT = r"(?P<subj>[A-Z]\w*|[Tt]he \w+)"
_FACT = re.compile(rf"^{_SUBJECT} (?:is|was) (?P<neg>not )?(?P<attr>\w+)\.$")
_SHOWS = re.compile(rf"^{_SUBJECT} shows (?P<attr>\w+)\.$")
_RULE_ALL = re.compile(r"^All (?P<a>\w+) \w+ are (?P<b>\w+)\.$")
_RULE_EVERY = re.compile(r"^Every (?P<a>\w+) \w+ is (?P<b>\w+)\.$")
_RULE_IF = re.compile(r"^If someone is (?P<a>\w+), then they are (?P<b>\w+)\.$")
_QUESTION = re.compile(rf"^Is {_SUBJECT} (?P<neg>not )?(?P<attr>\w+)\?$")


def propose_from_templates(p: Problem) -> list[Proposal]:
    """Per-unit skeletons for the fixed benchmark templates; raises
    TranslationFailure on the first sentence no template covers."""
    proposals = []
    for unit_index, unit in p.units():
        text = unit.text
        is_query = unit_index == QUESTION_UNIT
        m = (_QUESTION if is_query else _FACT).match(text)
        if m:
            negation = "~" if m.groupdict().get("neg") else ""
            subject = _camel(m.group("subj"))
            proposals.append(Proposal(
                unit=unit_index,
                skeleton=f"{negation}Slot0({subject})",
                slots=(m.group("attr"),),
                is_query=is_query,
                slot_spans=(m.span("attr"),),
                anchors=((*m.span("subj"), subject),),
            ))
            continue
        if not is_query:
            m = _SHOWS.match(text)
            if m:
                subject = _camel(m.group("subj"))
                proposals.append(Proposal(
                    unit=unit_index,
                    skeleton=f"Slot0({subject})",
                    slots=(m.group("attr"),),
                    slot_spans=(m.span("attr"),),
                    anchors=((*m.span("subj"), subject),),
                ))
                continue
            m = _RULE_ALL.match(text) or _RULE_EVERY.match(text) or _RULE_IF.match(text)
            if m:
                proposals.append(Proposal(
                    unit=unit_index,
                    skeleton="all x (Slot0(x) -> Slot1(x))",
                    slots=(m.group("a"), m.group("b")),
                    slot_spans=(m.span("a"), m.span("b")),
                ))
                continue
        raise TranslationFailure(f"no template matches unit {unit_index}: {text!r}")
    return proposals


class ExactMatchOracle:
    """Degenerate oracle: only identical normalized surfaces group together.
    Routing through it reproduces the drift-prone baseline exactly."""

    def equiv(self, e: str, expressions: tuple[str, ...]) -> bool:
        return normalize_expression(e) in expressions

    def conflict(self, e: str, expressions: tuple[str, ...]) -> None:
        return None


def _ledger(proposals: list[Proposal], table: MentalTable) -> dict[SpanKey, str]:
    """Resolve every slot against the final table so retroactive refinements
    are reflected, then add the translator-resolved anchors."""
    out: dict[SpanKey, str] = {}
    for proposal in proposals:
        for surface, (start, end) in zip(proposal.slots, proposal.slot_spans):
            ref = table.lookup(surface)
            if ref is not None:
                out[(proposal.unit, start, end)] = ref.render()
        for start, end, symbol in proposal.anchors:
            out[(proposal.unit, start, end)] = symbol
    return out


class _FixedProposals:
    def __init__(self, proposals: list[Proposal]):
        self._proposals = proposals

    def propose(self, p: Problem) -> list[Proposal]:
        del p
        return self._proposals


class NaiveTranslator:
    """Names every predicate after the literal surface form it sees; no
    cross-surface grouping unless wrapped with table guidance."""

    def __init__(self, semantics_mode: str = CLOSED_WORLD,
                 oracle: EquivalenceOracle | None = None):
        self.semantics_mode = semantics_mode
        self.oracle = oracle  # None reproduces the drift-prone baseline

    def propose(self, p: Problem) -> list[Proposal]:
        return propose_from_templates(p)

    def translate(self, item: Problem | DiversifiedProblem) -> TranslatorOutput:
        problem, _ = _unwrap(item)
        try:
            proposals = self.propose(problem)
            program, table, trace = translate_with_mental(
                item, _FixedProposals(proposals),
                self.oracle or ExactMatchOracle(), self.semantics_mode,
            )
        except TranslationFailure as exc:
            return TranslatorOutput(raw_output="", program=None, parse_error=str(exc))
        raw = _render_program_block(program) if program else ""
        return TranslatorOutput(
            raw_output=raw,
            program=program,
            span_symbols=_ledger(proposals, table),
            table=table,
            trace=trace,
        )


class GoldTranslator:
    """Emits the gold program with every diversified surface mapped back to
    its concept symbol through provenance; drift-free by construction."""

    def translate(self, item: Problem | DiversifiedProblem) -> TranslatorOutput:
        problem, diversified = _unwrap(item)
        if problem.gold_logic is None or problem.gold_concepts is None:
            raise MissingGold(f"problem {problem.id} lacks gold logic or concept spans")
        program = problem.gold_logic
        span_symbols: dict[SpanKey, str] = {}
        if diversified is not None:
            concept_symbols = _gold_concept_symbols(problem)
            for concept_id, entries in diversified.provenance.items():
                symbol = concept_symbols.get(concept_id)
                if symbol is None:
                    continue
                for e in entries:
                    span_symbols[(e.unit, e.char_start, e.char_end)] = symbol
        return TranslatorOutput(
            raw_output=_render_program_block(program),
            program=program,
            span_symbols=span_symbols,
        )


class SplitAdversaryTranslator:
    """Keeps the gold structure but assigns one symbol per distinct surface
    form of each concept: maximal drift with otherwise-correct logic."""

    def translate(self, item: Problem | DiversifiedProblem) -> TranslatorOutput:
        problem, diversified = _unwrap(item)
        if problem.gold_logic is None or problem.gold_concepts is None:
            raise MissingGold(f"problem {problem.id} lacks gold logic or concept spans")
        if diversified is None:
            return GoldTranslator().translate(item)
        gold = problem.gold_logic
        if len(gold.premises) != len(problem.sentences):
            raise MissingGold(
                f"problem {problem.id}: premises are not sentence-aligned"
            )
        concept_symbols = _gold_concept_symbols(problem)
        symbol_names: dict[tuple[str, str], str] = {}
        taken: set[str] = set()

        def per_surface_symbol(concept_id: str, surface: str) -> str:
            key = (concept_id, surface.lower())
            if key not in symbol_names:
                name = _camel(surface)
                n = 2
                while name in taken:
                    name = f"{_camel(surface)}{n}"
                    n += 1
                taken.add(name)
                symbol_names[key] = name
            return symbol_names[key]

        # concept -> unit -> surface used there (first provenance entry wins)
        surface_at: dict[tuple[str, int], str] = {}
        for concept_id, entries in diversified.provenance.items():
            for e in entries:
                surface_at.setdefault((concept_id, e.unit), e.surface)

        pred_concepts = {
            symbol: concept_id for concept_id, symbol in concept_symbols.items()
        }
        registry = SymbolRegistry()
        span_symbols: dict[SpanKey, str] = {}

        def rebuild_unit(formula: Formula, unit_index: int) -> Formula:
            def rebuild(atom: Atom) -> Formula:
                name = gold.registry.name_of(atom.pred)
                concept_id = pred_concepts.get(name)
                surface = surface_at.get((concept_id, unit_index)) if concept_id else None
                target = per_surface_symbol(concept_id, surface) if surface else name
                sid = registry.lookup(target, PREDICATE)
                if sid is None:
                    sid = registry.declare(target, len(atom.args), PREDICATE)
                args = []
                for a in atom.args:
                    const_name = gold.registry.name_of(a.symbol) if isinstance(a, Const) else None
                    if const_name is not None:
                        cid = registry.lookup(const_name, CONSTANT)
                        if cid is None:
                            cid = registry.declare(const_name, 0, CONSTANT)
                        args.append(Const(cid))
                    else:
                        args.append(a)
                return Atom(sid, tuple(args))

            return map_atoms(formula, rebuild)

        premises = tuple(
            rebuild_unit(premise, i) for i, premise in enumerate(gold.premises)
        )
        query = rebuild_unit(gold.query, QUESTION_UNIT)
        program = LogicProgram(registry, premises, query, gold.semantics_mode).validate()
        for concept_id, entries in diversified.provenance.items():
            if concept_id not in concept_symbols:
                continue
            for e in entries:
                surface = surface_at[(concept_id, e.unit)]
                span_symbols[(e.unit, e.char_start, e.char_end)] = per_surface_symbol(
                    concept_id, surface
                )
        return TranslatorOutput(
            raw_output=_render_program_block(program),
            program=program,
            span_symbols=span_symbols,
        )


def _gold_concept_symbols(problem: Problem) -> dict[str, str]:
    """Concept id -> gold symbol name, for concepts whose camel-cased name is
    declared in the gold registry (predicate or constant)."""
    assert problem.gold_logic is not None and problem.gold_concepts is not None
    out: dict[str, str] = {}
    registry = problem.gold_logic.registry
    for concept_id in set(problem.gold_concepts.values()):
        name = _camel(concept_id)
        if registry.lookup(name, PREDICATE) or registry.lookup(name, CONSTANT):
            out[concept_id] = name
    return out


def _render_program_block(program: LogicProgram | None) -> str:
    if program is None:
        return ""
    lines = ["```"]
    for premise in program.premises:
        lines.append(f"premise: {render_formula(premise, program.registry)}")
    lines.append(f"query: {render_formula(program.query, program.registry)}")
    lines.append("```")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Fenced-block extraction shared by the LLM translator and trace export

_FENCE = re.compile(r"```(?:[a-z]*\n)?(.*?)```", re.DOTALL)


def extract_program_block(text: str, semantics_mode: str) -> LogicProgram:
    """Parse the first fenced block of `premise:`/`query:` lines."""
    m = _FENCE.search(text)
    if not m:
        raise TranslationFailure("reply contains no fenced program block")
    from ..fol.parser import parse_formula

    registry = SymbolRegistry()
    premises: list[Formula] = []
    query: Formula | None = None
    for raw in m.group(1).splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.lower().startswith("premise:"):
            premises.append(parse_formula(line.split(":", 1)[1], registry))
        elif line.lower().startswith("query:"):
            query = parse_formula(line.split(":", 1)[1], registry)
        else:
            raise TranslationFailure(f"unexpected line in program block: {line!r}")
    if query is None:
        raise TranslationFailure("program block has no query line")
    return LogicProgram(registry, tuple(premises), query, semantics_mode).validate()


_CSP_CONSTRAINT = re.compile(r"^(\w+)\(([^)]*)\)$")


def extract_csp_block(text: str) -> tuple[CSPSpec, list[Option]]:
    """Parse a fenced block of `objects:` / `constraint:` / `option k:` lines."""
    m = _FENCE.search(text)
    if not m:
        raise TranslationFailure("reply contains no fenced constraint block")
    objects: list[str] = []
    constraints: list[Constraint] = []
    options: list[Option] = []
    for raw in m.group(1).splitlines():
        line = raw.strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip().lower()
        rest = rest.strip()
        if key == "objects":
            objects = [o.strip() for o in rest.split(",") if o.strip()]
        elif key == "constraint":
            cm = _CSP_CONSTRAINT.match(rest)
            if not cm:
                raise TranslationFailure(f"bad constraint line: {line!r}")
            args = [a.strip() for a in cm.group(2).split(",")]
            kind = cm.group(1)
            if kind in ("AtPosition", "NotAtPosition"):
                constraints.append(Constraint(kind, (args[0], int(args[1]))))
            else:
                constraints.append(Constraint(kind, tuple(args)))
        elif key.startswith("option"):
            om = re.match(r"^(\w+) at (\d+)$", rest)
            if not om:
                raise TranslationFailure(f"bad option line: {line!r}")
            options.append(Option(om.group(1), int(om.group(2))))
        else:
            raise TranslationFailure(f"unexpected line in constraint block: {line!r}")
    if not objects:
        raise TranslationFailure("constraint block declares no objects")
    return CSPSpec(objects, constraints), options


class LLMTranslator:
    """Few-shot prompted translation through a chat client.

    Replies must carry a fenced program (or constraint) block; with table
    guidance enabled the reply instead lists per-unit skeletons and surfaces,
    which are routed through the table exactly like the offline translators.
    """

    def __init__(self, cfg: TranslatorConfig, client, prompts: "PromptLibrary",
                 oracle: EquivalenceOracle | None = None,
                 semantics_mode: str = CLOSED_WORLD):
        self.cfg = cfg
        self.client = client
        self.prompts = prompts
        self.oracle = oracle
        self.semantics_mode = semantics_mode
        self._proposals: list[Proposal] = []

    def propose(self, p: Problem) -> list[Proposal]:
        # Filled in by translate() after parsing the model reply.
        return self._proposals

    def translate(self, item: Problem | DiversifiedProblem) -> TranslatorOutput:
        problem, _ = _unwrap(item)
        prompt = self.prompts.render_translation(problem, self.cfg)
        reply = self.client.complete(prompt, temperature=self.cfg.temperature)
        output = TranslatorOutput(
            raw_output=reply.text, program=None, parse_error="unparsed",
            tokens_in=reply.tokens_in, tokens_out=reply.tokens_out,
        )
        try:
            if self.cfg.mental:
                self._proposals = parse_proposal_lines(reply.text)
                program, table, trace = translate_with_mental(
                    item, self, self.oracle or ExactMatchOracle(), self.semantics_mode
                )
                output.program = program
                output.parse_error = None
                output.table = table
                output.trace = trace
                output.span_symbols = _ledger(self._proposals, table)
            elif problem.task_kind == "deduction":
                spec, options = extract_csp_block(reply.text)
                output.program = spec
                output.options = options
                output.parse_error = None
            else:
                output.program = extract_program_block(reply.text, self.semantics_mode)
                output.parse_error = None
        except Exception as exc:
            output.program = None
            output.parse_error = str(exc)
        return output


_PROPOSAL_LINE = re.compile(
    r"^(?:unit (?P<unit>-?\d+)|(?P<query>query)): (?P<skeleton>[^|]+)(?P<slots>(\|[^|]*)*)$"
)


def parse_proposal_lines(text: str) -> list[Proposal]:
    """Proposal format for table-guided replies, one unit per line:

        unit 0: Slot0(Anne) | benevolent
        query: Slot0(Anne) | smart
    """
    m = _FENCE.search(text)
    body = m.group(1) if m else text
    proposals = []
    for raw in body.splitlines():
        line = raw.strip()
        if not line:
            continue
        pm = _PROPOSAL_LINE.match(line)
        if not pm:
            raise TranslationFailure(f"bad proposal line: {line!r}")
        slots = tuple(
            s.strip() for s in (pm.group("slots") or "").split("|")[1:] if s.strip()
        )
        # No char spans are known for model-proposed surfaces; the ledger
        # stays empty and alignment falls back to the llm aligner.
        proposals.append(Proposal(
            unit=QUESTION_UNIT if pm.group("query") else int(pm.group("unit")),
            skeleton=pm.group("skeleton").strip(),
            slots=slots,
            is_query=bool(pm.group("query")),
        ))
    if not proposals:
        raise TranslationFailure("reply contains no proposal lines")
    return proposals


def make_translator(cfg: TranslatorConfig, resources=None, client=None,
                    semantics_mode: str = CLOSED_WORLD):
    """Build the configured translator; LLM kinds need a client."""
    from ..mental.oracles import lexicon_oracle, llm_oracle
    from .config import GOLD, LLM, NAIVE, ORACLE_LLM, SPLIT_ADVERSARY

    oracle = None
    prompts = PromptLibrary.load(cfg.prompt_dir)
    if cfg.mental:
        if cfg.oracle == ORACLE_LLM:
            if client is None:
                raise ValueError("llm oracle requires a client")
            equiv_template, conflict_template = prompts.oracle_templates()
            oracle = llm_oracle(client, equiv_template, conflict_template)
        else:
            from ..diversify.resources import Resources

            resources = resources or Resources.load()
            oracle = lexicon_oracle(resources.synonyms, resources.derivations)
    if cfg.kind == GOLD:
        return GoldTranslator()
    if cfg.kind == SPLIT_ADVERSARY:
        return SplitAdversaryTranslator()
    if cfg.kind == NAIVE:
        return NaiveTranslator(semantics_mode, oracle=oracle)
    if cfg.kind == LLM:
        if client is None:
            raise ValueError("llm translator requires a client")
        return LLMTranslator(cfg, client, prompts, oracle=oracle,
                             semantics_mode=semantics_mode)
    raise ValueError(f"unknown translator kind {cfg.kind!r}")
