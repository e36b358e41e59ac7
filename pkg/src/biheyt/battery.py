"""Named desk-scale checks over the library, aggregated into one report.

Each check states a finite claim (the anchor), computes it from scratch
through the public API, and records a verdict with a re-checkable witness.
Budget overruns come out as "inconclusive", never as a pass; any verdict
other than pass makes the overall report a fail.
"""

import json
import time
from dataclasses import dataclass

from .algebras import BiHeytingAlgebra, chain_algebra, is_boolean, product, subset_algebra
from .budgets import resolve_node_budget
from .duality import dual_poset, upset_algebra
from .errors import BudgetExceededError
from .free import free_algebra
from .morphisms import (
    embeddings,
    embeds_in_power,
    is_isomorphic,
    is_subdirectly_irreducible,
    quotient,
    subalgebras,
)
from .posets import Poset, disjoint_union, enumerate_posets, poset_isomorphic
from .rules import (
    _all_congruences,
    admissible_up_to,
    dense_codense_rule,
    pos_existential_holds,
    rule_holds,
    valid_in_all,
)


@dataclass(frozen=True)
class BatteryConfig:
    poset_bound: int = 4  # enumerate posets up to this many points
    chain_bound: int = 5
    admissible_max_vars: int = 2
    node_budget: int | None = None
    free_cell_budget: int | None = None
    table_cell_budget: int | None = None
    record_timing: bool = True

    @classmethod
    def from_json_dict(cls, d: dict) -> "BatteryConfig":
        known = {f for f in cls.__dataclass_fields__}
        bad = set(d) - known
        if bad:
            raise ValueError(f"unknown config keys: {sorted(bad)}")
        return cls(**d)


@dataclass(frozen=True)
class CheckResult:
    id: str
    desc: str
    anchor: str
    verdict: str  # pass | fail | inconclusive
    witness: dict
    ms: int


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]
    overall: str  # pass | fail

    def to_json_dict(self) -> dict:
        return {
            "checks": [
                {
                    "id": c.id,
                    "desc": c.desc,
                    "anchor": c.anchor,
                    "verdict": c.verdict,
                    "witness": c.witness,
                    "ms": c.ms,
                }
                for c in self.checks
            ],
            "overall": self.overall,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def has_inconclusive(self) -> bool:
        return any(c.verdict == "inconclusive" for c in self.checks)

    def has_failure(self) -> bool:
        return any(c.verdict == "fail" for c in self.checks)


def poset_family(bound: int) -> list[Poset]:
    """All posets with 1..bound points, smaller first, canonical order."""
    out: list[Poset] = []
    for n in range(1, bound + 1):
        out.extend(enumerate_posets(n))
    return out


def products_with_two(bound: int) -> list[BiHeytingAlgebra]:
    """Up(P) x 2 for every poset with at most bound points."""
    two = chain_algebra(2)
    return [product(upset_algebra(p), two) for p in poset_family(bound)]


def _free1(cfg, ctx):
    if "free1" not in ctx:
        ctx["free1"] = free_algebra(
            [chain_algebra(3)],
            1,
            free_cell_budget=cfg.free_cell_budget,
            table_cell_budget=cfg.table_cell_budget,
        )
    return ctx["free1"]


def _family(cfg, ctx):
    if "family" not in ctx:
        ctx["family"] = products_with_two(cfg.poset_bound)
    return ctx["family"]


def _si_quotients_of_subalgebras(a, *, node_budget):
    """Nondegenerate SI algebras among quotients of subalgebras of a."""
    resolve_node_budget(node_budget)
    out = []
    for mask in subalgebras(a):
        sub, _ = subset_algebra(a, mask)
        for c in _all_congruences(sub):
            q = quotient(sub, c)
            if q.size > 1 and is_subdirectly_irreducible(q)[0]:
                out.append(q)
    return out


def _check_free_size(cfg, ctx):
    free = _free1(cfg, ctx)
    three = chain_algebra(3)
    target = product(product(three, chain_algebra(2)), chain_algebra(2))
    iso = is_isomorphic(
        free.algebra, target, node_budget=cfg.node_budget
    )
    ok = free.algebra.size == 12 and iso is not None
    witness = {"size": free.algebra.size, "iso_map": list(iso.map) if iso else None}
    return ok, witness


def _check_free_dual(cfg, ctx):
    free = _free1(cfg, ctx)
    p = dual_poset(free.algebra)
    target = disjoint_union(
        disjoint_union(Poset.chain(2), Poset.antichain(1)), Poset.antichain(1)
    )
    image = poset_isomorphic(p, target)
    return image is not None, {"dual_size": p.size, "iso": list(image) if image else None}


def _check_rule_family(cfg, ctx):
    r = dense_codense_rule()
    on_three = rule_holds(chain_algebra(3), r, node_budget=cfg.node_budget)
    family = _family(cfg, ctx)
    on_family = valid_in_all(family, r, node_budget=cfg.node_budget)
    ok = (
        not on_three.holds
        and on_three.witness == (1,)
        and on_family.holds
    )
    witness = {
        "three_chain_counterexample": list(on_three.witness or ()),
        "family_size": len(family),
        "family_failure": None
        if on_family.holds
        else [on_family.failing_index, list(on_family.witness)],
    }
    return ok, witness


def _check_admissible(cfg, ctx):
    r = dense_codense_rule()
    evidence = admissible_up_to(
        [chain_algebra(3)],
        r,
        cfg.admissible_max_vars,
        node_budget=cfg.node_budget,
        free_cell_budget=cfg.free_cell_budget,
        table_cell_budget=cfg.table_cell_budget,
    )
    witness = {
        "verdicts": list(evidence.verdicts),
        "truncated_at": evidence.truncated_at,
    }
    if evidence.truncated_at is not None:
        raise BudgetExceededError(
            f"free algebra budget hit at n={evidence.truncated_at}"
        )
    ok = len(evidence.verdicts) == cfg.admissible_max_vars and all(evidence.verdicts)
    return ok, witness


def _check_no_embedding(cfg, ctx):
    family = _family(cfg, ctx)
    three = chain_algebra(3)
    for i, b in enumerate(family):
        found = embeddings(three, b, node_budget=cfg.node_budget)
        if found:
            return False, {"family_index": i, "embedding": list(found[0].map)}
    return True, {"family_size": len(family), "embeddings_found": 0}


def _check_si_of_three(cfg, ctx):
    three = chain_algebra(3)
    sis = _si_quotients_of_subalgebras(three, node_budget=cfg.node_budget)
    sizes = sorted(q.size for q in sis)
    chains_ok = all(
        is_isomorphic(q, chain_algebra(q.size), node_budget=cfg.node_budget)
        for q in sis
    )
    covered = {q.size for q in sis} == {2, 3}
    si32, _ = is_subdirectly_irreducible(product(three, chain_algebra(2)))
    ok = chains_ok and covered and not si32
    return ok, {"si_sizes": sizes, "three_by_two_si": si32}


def _check_power_embeddings(cfg, ctx):
    free = _free1(cfg, ctx).algebra
    results = {}
    ok = True
    for name, factor in (("three", chain_algebra(3)), ("two", chain_algebra(2))):
        b = product(factor, free)
        emb = embeds_in_power(b, free, node_budget=cfg.node_budget)
        bad = [
            pair
            for pair, h in emb.separators.items()
            if h.verify() is not None or h.map[pair[0]] == h.map[pair[1]]
        ]
        ok = ok and emb.embeds and not bad
        results[name] = {
            "embeds": emb.embeds,
            "hom_count": emb.hom_count,
            "distinct_separators": len(emb.distinct_homs()),
            "bad_certificates": len(bad),
        }
    return ok, results


def _check_si_of_chains(cfg, ctx):
    per_n = {}
    ok = True
    for n in range(2, cfg.chain_bound + 1):
        sis = _si_quotients_of_subalgebras(
            chain_algebra(n), node_budget=cfg.node_budget
        )
        sizes = {q.size for q in sis}
        chains_ok = all(
            is_isomorphic(q, chain_algebra(q.size), node_budget=cfg.node_budget)
            for q in sis
        )
        ok = ok and chains_ok and sizes == set(range(2, n + 1))
        per_n[str(n)] = sorted(sizes)
    return ok, {"si_sizes_by_chain": per_n}


def _check_pos_existential(cfg, ctx):
    body = list(dense_codense_rule().premises)
    three = chain_algebra(3)
    on_three = pos_existential_holds(three, body, 1)
    on_product = pos_existential_holds(product(three, chain_algebra(2)), body, 1)
    ok = on_three.holds and on_three.witness == (1,) and not on_product.holds
    return ok, {
        "three_witness": list(on_three.witness or ()),
        "three_by_two_holds": on_product.holds,
    }


def _check_three_from_nonboolean(cfg, ctx):
    three = chain_algebra(3)
    checked = 0
    found = 0
    first_miss = None
    for p in poset_family(cfg.poset_bound):
        b = upset_algebra(p)
        if is_boolean(b):
            continue
        checked += 1
        hit = False
        for mask in subalgebras(b):
            sub, _ = subset_algebra(b, mask)
            for c in _all_congruences(sub):
                q = quotient(sub, c)
                if q.size == 3 and is_isomorphic(
                    q, three, node_budget=cfg.node_budget
                ):
                    hit = True
                    break
            if hit:
                break
        if hit:
            found += 1
        elif first_miss is None:
            first_miss = p.to_json_dict()
    ok = checked > 0 and found == checked
    return ok, {"non_boolean_checked": checked, "found": found, "first_miss": first_miss}


_CHECKS = (
    (
        "C1",
        "free algebra on one generator over the 3-chain",
        "the one-generator free algebra of the variety of the 3-chain has "
        "12 elements and is isomorphic to 3x2x2",
        _check_free_size,
    ),
    (
        "C2",
        "dual poset of the one-generator free algebra",
        "its dual is a 2-chain together with two isolated points",
        _check_free_dual,
    ),
    (
        "C3",
        "dense-codense rule on the 3-chain and on upset-algebra x 2 products",
        "the rule fails on the 3-chain at the middle element yet holds in "
        "every product of an upset algebra with the 2-chain",
        _check_rule_family,
    ),
    (
        "C4",
        "rule validity on free algebras up to the variable bound",
        "the dense-codense rule holds on the free algebras on 1 and 2 "
        "generators, bounded evidence of admissibility",
        _check_admissible,
    ),
    (
        "C5",
        "no embedding of the 3-chain into any family member",
        "the 3-chain embeds into no product of an upset algebra with the "
        "2-chain",
        _check_no_embedding,
    ),
    (
        "C6",
        "subdirectly irreducible members generated by the 3-chain",
        "quotients of subalgebras of the 3-chain give exactly the 2- and "
        "3-chains as subdirectly irreducibles, and 3x2 is not one",
        _check_si_of_three,
    ),
    (
        "C7",
        "power embeddings of 3xF(1) and 2xF(1)",
        "both products embed into a finite power of the free algebra, with "
        "separating homomorphisms as certificates",
        _check_power_embeddings,
    ),
    (
        "C8",
        "subdirectly irreducibles for chains up to the chain bound",
        "for each chain length n, quotients of subalgebras yield exactly "
        "the chains 2..n as subdirectly irreducibles",
        _check_si_of_chains,
    ),
    (
        "C9",
        "positive existential separation of 3 from 3x2",
        "some element of the 3-chain is simultaneously dense and codense, "
        "and no element of 3x2 is",
        _check_pos_existential,
    ),
    (
        "C10",
        "the 3-chain as a quotient of a subalgebra of non-Boolean upset algebras",
        "every non-Boolean upset algebra in the poset family has the "
        "3-chain among quotients of its subalgebras",
        _check_three_from_nonboolean,
    ),
)


def check_ids() -> tuple[str, ...]:
    return tuple(c[0] for c in _CHECKS)


def run_battery(config: BatteryConfig | None = None, only=None) -> VerificationReport:
    """Run the battery (or the subset named by only) in check-id order."""
    cfg = config or BatteryConfig()
    wanted = set(check_ids() if only is None else only)
    unknown = wanted - set(check_ids())
    if unknown:
        raise ValueError(f"unknown check ids: {sorted(unknown)}")
    ctx: dict = {}
    results = []
    for check_id, desc, anchor, runner in _CHECKS:
        if check_id not in wanted:
            continue
        start = time.perf_counter()
        try:
            ok, witness = runner(cfg, ctx)
            verdict = "pass" if ok else "fail"
        except BudgetExceededError as e:
            verdict = "inconclusive"
            witness = {"budget": str(e)}
        ms = int((time.perf_counter() - start) * 1000) if cfg.record_timing else 0
        results.append(CheckResult(check_id, desc, anchor, verdict, witness, ms))
    overall = "pass" if all(c.verdict == "pass" for c in results) else "fail"
    return VerificationReport(tuple(results), overall)
