"""Group specifications, report assembly and corpus runs."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from importlib import resources
from math import log2

from .bounds import GroupContext, bound_suite
from .fq import field_of_order
from .permgroup import (PermGroup, alternating_group, cyclic_group, dihedral_group, is_perm, is_primitive,
                        is_soluble, symmetric_group)
from .projective import build_action, build_pair_action
from .stats import BudgetExhausted, SearchBudget, compute_stats, max_irredundant_base

SCHEMA = "irrbase.report/1"
FAMILIES = ("pgl", "pgammal", "psl", "sym", "alt", "cyclic", "dihedral", "pair-sum", "pair-leq")
CSV_HEADER = ["name", "n", "order", "b", "B", "H", "I", "RC", "greedy", "5log2n", "all_bounds_pass"]


class SpecError(ValueError):
    pass


@dataclass
class GroupSpec:
    family: str | None = None
    d: int | None = None
    m: int | None = None
    q: int | None = None
    degree: int | None = None
    generators: list[list[int]] | None = None
    graph: bool = False
    name: str | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "GroupSpec":
        if not isinstance(data, dict):
            raise SpecError("group spec must be a JSON object")
        known = {"family", "d", "m", "q", "degree", "generators", "graph", "name"}
        unknown = set(data) - known
        if unknown:
            raise SpecError(f"unknown keys {sorted(unknown)}")
        spec = cls(**data)
        spec.validate()
        return spec

    def to_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if v is not None and not (k == "graph" and not v)}
        return out

    def validate(self):
        if self.generators is not None:
            if self.family is not None:
                raise SpecError("give either a family or explicit generators, not both")
            if self.degree is None or self.degree < 1:
                raise SpecError("explicit generators need a positive degree")
            for g in self.generators:
                if len(g) != self.degree or not is_perm(g):
                    raise SpecError(f"generator {g} is not a permutation of degree {self.degree}")
            return
        if self.family not in FAMILIES:
            raise SpecError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family in ("sym", "alt", "cyclic", "dihedral"):
            if self.degree is None or self.degree < (3 if self.family == "dihedral" else 1):
                raise SpecError(f"family {self.family} needs a valid degree")
            return
        if self.d is None or self.q is None:
            raise SpecError(f"family {self.family} needs d and q")
        if self.m is None:
            self.m = 1
        try:
            field_of_order(self.q)
        except ValueError as exc:
            raise SpecError(str(exc)) from None
        if self.family.startswith("pair"):
            if self.d < 3 or not 1 <= self.m or 2 * self.m >= self.d:
                raise SpecError("pair actions need d >= 3 and 1 <= m < d/2")
        elif not (2 <= self.d and 1 <= self.m <= self.d - 1):
            raise SpecError("need d >= 2 and 1 <= m <= d-1")

    def label(self) -> str:
        if self.name:
            return self.name
        if self.generators is not None:
            return f"explicit-{self.degree}"
        if self.family in ("sym", "alt", "cyclic", "dihedral"):
            return f"{self.family}{self.degree}"
        suffix = "+graph" if self.graph else ""
        return f"{self.family}({self.d},{self.m},{self.q}){suffix}"

    def build(self) -> PermGroup:
        fam = self.family
        if self.generators is not None:
            return PermGroup(self.degree, self.generators)
        if fam == "sym":
            return symmetric_group(self.degree)
        if fam == "alt":
            return alternating_group(self.degree)
        if fam == "cyclic":
            return cyclic_group(self.degree)
        if fam == "dihedral":
            return dihedral_group(self.degree)
        fld = field_of_order(self.q)
        if fam.startswith("pair"):
            kind = "direct-sum" if fam == "pair-sum" else "contained"
            return build_pair_action(kind, self.d, self.m, fld, graph=self.graph).group()
        return build_action(fam, self.d, self.m, fld).group()

    def context(self, group: PermGroup, budget: SearchBudget) -> GroupContext:
        ctx = GroupContext(n=group.degree, order=group.order(), transitive=group.is_transitive(),
                           primitive=is_primitive(group), soluble=is_soluble(group))
        if self.family in ("pgl", "pgammal", "psl", "pair-sum", "pair-leq"):
            ctx.family, ctx.d, ctx.m, ctx.q = self.family, self.d, self.m, self.q
        if self.family in ("pair-sum", "pair-leq") and "I" in budget.enabled:
            # the linear part of every pair group built here is PGL_d(q)
            companion = build_action("pgl", self.d, self.m, field_of_order(self.q)).group()
            ctx.companion_I = max_irredundant_base(companion, budget)[0]
        return ctx


def run_stats(spec: GroupSpec, budget: SearchBudget | None = None, *, timing: bool = False) -> dict:
    """Build, compute, check.  Raises BudgetExhausted on cap exhaustion.

    Wall-clock timing is only included on request so reports stay byte-stable.
    """
    budget = budget or SearchBudget()
    t0 = time.perf_counter()
    group = spec.build()
    stats = compute_stats(group, budget)
    ctx = spec.context(group, budget)
    bounds = bound_suite(stats, ctx)
    report = {
        "schema": SCHEMA,
        "spec": spec.to_dict(),
        "name": spec.label(),
        "stats": stats.to_dict(),
        "context": {"transitive": ctx.transitive, "primitive": ctx.primitive, "soluble": ctx.soluble,
                    "companion_I": ctx.companion_I},
        "bounds": bounds.to_dict(),
        "budget": {"node_cap": budget.node_cap, "outcome": "ok"},
    }
    if timing:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    return report


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}


def csv_row(report: dict) -> list:
    s = report["stats"]
    n = s["n"]
    return [report["name"], n, s["order"], s["b"], s["B"], s["H"], s["I"], s["RC"], s["greedy_size"],
            f"{5 * log2(n):.6f}" if n > 1 else "0.000000", report["bounds"]["pass"]]


def load_corpus(text: str) -> list[GroupSpec]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise SpecError("corpus must be a JSON list of group specs")
    specs = []
    for i, entry in enumerate(data):
        try:
            specs.append(GroupSpec.from_dict(entry))
        except (SpecError, TypeError) as exc:
            raise SpecError(f"corpus entry {i}: {exc}") from None
    return specs


def default_corpus() -> list[GroupSpec]:
    text = resources.files("irrbase").joinpath("data/default_corpus.json").read_text(encoding="utf-8")
    return load_corpus(text)


@dataclass
class CorpusResult:
    reports: list[dict] = field(default_factory=list)

    def csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.reports:
            w.writerow(csv_row(r))
        return buf.getvalue()

    @property
    def passed(self) -> bool:
        return all(r["bounds"]["pass"] for r in self.reports)

    def summary(self) -> dict:
        return {"schema": SCHEMA, "groups": len(self.reports), "all_bounds_pass": self.passed,
                "reports": [strip_timing(r) for r in self.reports]}


def run_corpus(specs: list[GroupSpec], budget: SearchBudget | None = None) -> CorpusResult:
    res = CorpusResult()
    for spec in specs:
        res.reports.append(run_stats(spec, budget))
    return res


__all__ = ["GroupSpec", "SpecError", "run_stats", "run_corpus", "load_corpus", "default_corpus",
           "BudgetExhausted", "CSV_HEADER", "SCHEMA"]
