"""Terms, equations, and rules (quasi-equations), plus the decision
procedures built on them.

Text grammar: variables ``x1, x2, ...``; constants ``0``, ``1``; binary
``&``, ``|``, ``->``, ``-<``; prefix ``!`` and ``~`` (sugar for ``t -> 0``
and ``1 -< t``, expanded at parse time); equations ``s = t``; rules
``p1 ; p2 |- c``. Prefix operators bind tightest, then ``&``, then ``|``,
then ``->`` / ``-<`` which associate to the right. Parentheses allowed.

Assignments enumerate in ascending mixed-radix order with x1 most
significant, so every "first witness" is canonical.
"""

import itertools
import json
import re
from dataclasses import dataclass

from .algebras import BiHeytingAlgebra, product, subset_algebra
from .budgets import resolve_node_budget
from .errors import BudgetExceededError, RuleSyntaxError
from .free import FreeAlgebraResult, free_algebra
from .morphisms import (
    Congruence,
    congruence_generated,
    principal_congruence_parts,
    quotient,
    subalgebras,
)


@dataclass(frozen=True)
class Var:
    index: int  # 1-based


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Bin:
    op: str  # meet | join | imp | coimp
    left: "Term"
    right: "Term"


Term = Var | Const | Bin

_OP_NAMES = ("meet", "join", "imp", "coimp")


def neg(t: Term) -> Term:
    return Bin("imp", t, Const(0))


def coneg(t: Term) -> Term:
    return Bin("coimp", Const(1), t)


@dataclass(frozen=True)
class Equation:
    left: Term
    right: Term


@dataclass(frozen=True)
class Rule:
    premises: tuple[Equation, ...]
    conclusion: Equation

    def __post_init__(self):
        seen = _vars_of_rule(self)
        if seen and seen != set(range(1, max(seen) + 1)):
            raise RuleSyntaxError(
                "variables must be numbered consecutively from x1"
            )

    @property
    def arity(self) -> int:
        seen = _vars_of_rule(self)
        return max(seen) if seen else 0


def _vars_of_term(t: Term, acc: set):
    if isinstance(t, Var):
        acc.add(t.index)
    elif isinstance(t, Bin):
        _vars_of_term(t.left, acc)
        _vars_of_term(t.right, acc)


def _vars_of_rule(r: Rule) -> set:
    acc: set = set()
    for eq in (*r.premises, r.conclusion):
        _vars_of_term(eq.left, acc)
        _vars_of_term(eq.right, acc)
    return acc


# parsing

_TOKEN = re.compile(r"x[0-9]+|\|-|->|-<|[01&|!~()=;]")


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise RuleSyntaxError(f"unexpected character {text[pos]!r} at position {pos}")
        out.append(m.group())
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise RuleSyntaxError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, tok):
        got = self.take()
        if got != tok:
            raise RuleSyntaxError(f"expected {tok!r}, got {got!r}")

    def term(self) -> Term:
        left = self.disjunction()
        if self.peek() in ("->", "-<"):
            op = self.take()
            right = self.term()  # right-assoc
            return Bin("imp" if op == "->" else "coimp", left, right)
        return left

    def disjunction(self) -> Term:
        left = self.conjunction()
        while self.peek() == "|":
            self.take()
            left = Bin("join", left, self.conjunction())
        return left

    def conjunction(self) -> Term:
        left = self.prefixed()
        while self.peek() == "&":
            self.take()
            left = Bin("meet", left, self.prefixed())
        return left

    def prefixed(self) -> Term:
        tok = self.peek()
        if tok == "!":
            self.take()
            return neg(self.prefixed())
        if tok == "~":
            self.take()
            return coneg(self.prefixed())
        return self.atom()

    def atom(self) -> Term:
        tok = self.take()
        if tok == "0":
            return Const(0)
        if tok == "1":
            return Const(1)
        if tok == "(":
            inner = self.term()
            self.expect(")")
            return inner
        if tok.startswith("x"):
            index = int(tok[1:])
            if index < 1:
                raise RuleSyntaxError("variable indices start at x1")
            return Var(index)
        raise RuleSyntaxError(f"expected a term, got {tok!r}")

    def equation(self) -> Equation:
        left = self.term()
        self.expect("=")
        return Equation(left, self.term())

    def rule(self) -> Rule:
        premises = []
        if self.peek() != "|-":
            premises.append(self.equation())
            while self.peek() == ";":
                self.take()
                premises.append(self.equation())
        self.expect("|-")
        conclusion = self.equation()
        return Rule(tuple(premises), conclusion)

    def finish(self):
        if self.peek() is not None:
            raise RuleSyntaxError(f"trailing input from {self.peek()!r}")


def parse_term(text: str) -> Term:
    p = _Parser(_tokenize(text))
    t = p.term()
    p.finish()
    return t


def parse_equation(text: str) -> Equation:
    p = _Parser(_tokenize(text))
    eq = p.equation()
    p.finish()
    return eq


def parse_rule(text: str) -> Rule:
    p = _Parser(_tokenize(text))
    r = p.rule()
    p.finish()
    return r


# printing; the inverse of parse_term up to whitespace, with sugar restored

_LEVEL_ARROW, _LEVEL_OR, _LEVEL_AND, _LEVEL_PREFIX = 0, 1, 2, 3


def _level(t: Term) -> int:
    if isinstance(t, (Var, Const)):
        return 4
    if t.op == "imp":
        return _LEVEL_PREFIX if t.right == Const(0) else _LEVEL_ARROW
    if t.op == "coimp":
        return _LEVEL_PREFIX if t.left == Const(1) else _LEVEL_ARROW
    return _LEVEL_OR if t.op == "join" else _LEVEL_AND


def _fmt(t: Term, need: int) -> str:
    lvl = _level(t)
    if isinstance(t, Var):
        s = f"x{t.index}"
    elif isinstance(t, Const):
        s = str(t.value)
    elif lvl == _LEVEL_PREFIX:
        if t.op == "imp":
            s = "!" + _fmt(t.left, _LEVEL_PREFIX)
        else:
            s = "~" + _fmt(t.right, _LEVEL_PREFIX)
    elif lvl == _LEVEL_ARROW:
        glyph = " -> " if t.op == "imp" else " -< "
        s = _fmt(t.left, _LEVEL_OR) + glyph + _fmt(t.right, _LEVEL_ARROW)
    elif t.op == "join":
        s = _fmt(t.left, _LEVEL_OR) + " | " + _fmt(t.right, _LEVEL_AND)
    else:
        s = _fmt(t.left, _LEVEL_AND) + " & " + _fmt(t.right, _LEVEL_PREFIX)
    return "(" + s + ")" if lvl < need else s


def format_term(t: Term) -> str:
    return _fmt(t, 0)


def format_equation(eq: Equation) -> str:
    return f"{format_term(eq.left)} = {format_term(eq.right)}"


def format_rule(r: Rule) -> str:
    head = " ; ".join(format_equation(eq) for eq in r.premises)
    return f"{head} |- {format_equation(r.conclusion)}" if head else f"|- {format_equation(r.conclusion)}"


# JSON mirror of the AST

def term_to_json(t: Term):
    if isinstance(t, Var):
        return {"var": t.index}
    if isinstance(t, Const):
        return {"const": t.value}
    return {"op": t.op, "left": term_to_json(t.left), "right": term_to_json(t.right)}


def term_from_json(d) -> Term:
    if not isinstance(d, dict):
        raise RuleSyntaxError("term JSON must be an object")
    if "var" in d:
        index = d["var"]
        if not isinstance(index, int) or index < 1:
            raise RuleSyntaxError("var index must be a positive integer")
        return Var(index)
    if "const" in d:
        if d["const"] not in (0, 1):
            raise RuleSyntaxError("const must be 0 or 1")
        return Const(d["const"])
    if d.get("op") not in _OP_NAMES:
        raise RuleSyntaxError(f"unknown term shape: {sorted(d)}")
    return Bin(d["op"], term_from_json(d["left"]), term_from_json(d["right"]))


def equation_to_json(eq: Equation):
    return {"left": term_to_json(eq.left), "right": term_to_json(eq.right)}


def equation_from_json(d) -> Equation:
    if not isinstance(d, dict) or "left" not in d or "right" not in d:
        raise RuleSyntaxError("equation JSON needs left and right")
    return Equation(term_from_json(d["left"]), term_from_json(d["right"]))


def rule_to_json(r: Rule):
    return {
        "premises": [equation_to_json(eq) for eq in r.premises],
        "conclusion": equation_to_json(r.conclusion),
    }


def rule_from_json(d) -> Rule:
    if not isinstance(d, dict) or "conclusion" not in d:
        raise RuleSyntaxError("rule JSON needs premises and conclusion")
    premises = tuple(equation_from_json(p) for p in d.get("premises", []))
    return Rule(premises, equation_from_json(d["conclusion"]))


def load_rule(text: str) -> Rule:
    """Rule from either the text grammar or its JSON mirror."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            payload = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise RuleSyntaxError(f"bad rule JSON: {e}") from None
        return rule_from_json(payload)
    return parse_rule(text)


def dense_codense_rule() -> Rule:
    """Premises force x1 to be both dense and codense; conclusion collapses
    the algebra. Text form: ``!x1 = 0 ; ~x1 = 1 |- 0 = 1``.
    """
    x = Var(1)
    return Rule(
        (Equation(neg(x), Const(0)), Equation(coneg(x), Const(1))),
        Equation(Const(0), Const(1)),
    )


# evaluation and validity

def eval_term(a: BiHeytingAlgebra, t: Term, assignment) -> int:
    if isinstance(t, Var):
        if t.index > len(assignment):
            raise ValueError(f"unbound variable x{t.index}")
        return assignment[t.index - 1]
    if isinstance(t, Const):
        return a.bot if t.value == 0 else a.top
    lhs = eval_term(a, t.left, assignment)
    rhs = eval_term(a, t.right, assignment)
    return int(getattr(a, t.op)[lhs, rhs])


def _eq_holds(a, eq, assignment) -> bool:
    return eval_term(a, eq.left, assignment) == eval_term(a, eq.right, assignment)


@dataclass(frozen=True)
class RuleCheck:
    holds: bool
    witness: tuple | None  # counter-assignment when false


def rule_holds(a: BiHeytingAlgebra, r: Rule, *, node_budget=None) -> RuleCheck:
    """Exhaustive check over all |a|^arity assignments, lowest witness first."""
    budget = resolve_node_budget(node_budget)
    count = a.size ** r.arity
    if count > budget:
        raise BudgetExceededError(
            f"{count} assignments exceed the node budget", spent=count, cap=budget
        )
    for assignment in itertools.product(range(a.size), repeat=r.arity):
        if all(_eq_holds(a, p, assignment) for p in r.premises) and not _eq_holds(
            a, r.conclusion, assignment
        ):
            return RuleCheck(False, assignment)
    return RuleCheck(True, None)


@dataclass(frozen=True)
class BatchCheck:
    holds: bool
    failing_index: int | None
    witness: tuple | None


def valid_in_all(algebras, r: Rule, *, node_budget=None) -> BatchCheck:
    """First failure wins; an empty list holds vacuously."""
    for i, a in enumerate(algebras):
        check = rule_holds(a, r, node_budget=node_budget)
        if not check.holds:
            return BatchCheck(False, i, check.witness)
    return BatchCheck(True, None, None)


# derivability: search the variety generated by one algebra

def _all_congruences(a: BiHeytingAlgebra) -> list[Congruence]:
    """Every congruence of a, as the join closure of the principal ones.

    Ordered by (block count descending, parts lexicographic): the identity
    comes first, the total congruence last. Kept off the public surface;
    only the searches below need the full lattice.
    """
    identity = tuple(range(a.size))
    principals = set(principal_congruence_parts(a).values())
    found = {identity} | principals
    frontier = list(found)
    while frontier:
        base = frontier.pop()
        for p in principals:
            if p == base:
                continue
            pairs = _parts_pairs(base) + _parts_pairs(p)
            joined = congruence_generated(a, pairs).parts
            if joined not in found:
                found.add(joined)
                frontier.append(joined)
    ordered = sorted(found, key=lambda parts: (-(max(parts) + 1), parts))
    return [Congruence.from_parts(a, parts) for parts in ordered]


def _parts_pairs(parts) -> list:
    firsts: dict[int, int] = {}
    pairs = []
    for e, p in enumerate(parts):
        if p in firsts:
            pairs.append((firsts[p], e))
        else:
            firsts[p] = e
    return pairs


@dataclass(frozen=True)
class VarietyCounterexample:
    algebra: BiHeytingAlgebra
    assignment: tuple
    power: int
    subuniverse_mask: int
    congruence_parts: tuple
    generator: BiHeytingAlgebra


def variety_counterexample(
    gen: BiHeytingAlgebra, r: Rule, power_bound: int, *, node_budget=None
) -> VarietyCounterexample | None:
    """A member of the variety generated by gen that refutes r, or None.

    Every finite member arises as a quotient of a subalgebra of a finite
    power, so the search walks powers gen^m for m = 1..power_bound, then
    subuniverses in canonical set order, then congruences in canonical
    order. The returned construction path is re-checkable.
    """
    if power_bound < 1:
        raise ValueError("power_bound must be at least 1")
    power = gen
    for m in range(1, power_bound + 1):
        if m > 1:
            power = product(power, gen)
        for mask in subalgebras(power):
            sub, _ = subset_algebra(power, mask)
            for c in _all_congruences(sub):
                q = quotient(sub, c)
                check = rule_holds(q, r, node_budget=node_budget)
                if not check.holds:
                    return VarietyCounterexample(
                        q, check.witness, m, mask, c.parts, gen
                    )
    return None


# admissibility: validity on free algebras, reported as bounded evidence

@dataclass(frozen=True)
class AdmissibilityEvidence:
    verdicts: tuple[bool, ...]  # verdict for n = 1, 2, ...
    witnesses: dict  # n -> counter-assignment, for false verdicts
    truncated_at: int | None  # first n whose free algebra blew the budget

    def refuted(self) -> bool:
        """A single false verdict is a proof of non-admissibility."""
        return not all(self.verdicts)

    def conclusive(self) -> bool:
        return self.refuted()


def admissible_up_to(gens, r: Rule, n_bound: int, *, node_budget=None, free_cell_budget=None, table_cell_budget=None) -> AdmissibilityEvidence:
    """rule_holds on the free algebra over gens for each n in 1..n_bound.

    All-true is evidence up to the bound, not a theorem; a false verdict is
    final. Budget overruns truncate the verdict list and are flagged.
    """
    if n_bound < 1:
        raise ValueError("n_bound must be at least 1")
    verdicts = []
    witnesses = {}
    for n in range(1, n_bound + 1):
        try:
            free = free_algebra(
                gens,
                n,
                free_cell_budget=free_cell_budget,
                table_cell_budget=table_cell_budget,
            )
            check = rule_holds(free.algebra, r, node_budget=node_budget)
        except BudgetExceededError:
            return AdmissibilityEvidence(tuple(verdicts), witnesses, n)
        verdicts.append(check.holds)
        if not check.holds:
            witnesses[n] = check.witness
    return AdmissibilityEvidence(tuple(verdicts), witnesses, None)


@dataclass(frozen=True)
class UnifierSearch:
    found: bool
    n_vars: int | None  # free algebra the assignment lives in
    assignment: tuple | None  # premise-satisfying elements of that free algebra
    bound: int


def premise_unifier(gens, r: Rule, m_bound: int, *, node_budget=None, free_cell_budget=None, table_cell_budget=None) -> UnifierSearch:
    """Search free algebras on 1..m_bound variables for an assignment
    satisfying every premise of r.

    A hit means the premises are jointly unifiable (each free element is a
    term substitution); a miss up to the bound is evidence the rule is
    passive, not a proof.
    """
    if m_bound < 1:
        raise ValueError("m_bound must be at least 1")
    budget = resolve_node_budget(node_budget)
    for m in range(1, m_bound + 1):
        free = free_algebra(
            gens,
            m,
            free_cell_budget=free_cell_budget,
            table_cell_budget=table_cell_budget,
        )
        a = free.algebra
        count = a.size ** r.arity
        if count > budget:
            raise BudgetExceededError(
                f"{count} assignments exceed the node budget at m={m}",
                spent=count,
                cap=budget,
            )
        for assignment in itertools.product(range(a.size), repeat=r.arity):
            if all(_eq_holds(a, p, assignment) for p in r.premises):
                return UnifierSearch(True, m, assignment, m_bound)
    return UnifierSearch(False, None, None, m_bound)


@dataclass(frozen=True)
class ExistentialCheck:
    holds: bool
    witness: tuple | None


def pos_existential_holds(a: BiHeytingAlgebra, body, arity: int) -> ExistentialCheck:
    """Does some assignment of the arity variables satisfy every equation
    in body? (A purely positive existential sentence.)
    """
    for eq in body:
        acc: set = set()
        _vars_of_term(eq.left, acc)
        _vars_of_term(eq.right, acc)
        if acc and max(acc) > arity:
            raise ValueError(f"equation uses x{max(acc)} beyond arity {arity}")
    for assignment in itertools.product(range(a.size), repeat=arity):
        if all(_eq_holds(a, eq, assignment) for eq in body):
            return ExistentialCheck(True, assignment)
    return ExistentialCheck(False, None)
