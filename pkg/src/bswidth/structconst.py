"""Class-multiplication pair counts m(a, b, c) and the reference-label
matching protocol used to compare against published class names.

The count m(a, b, c) is the number of pairs (u, v) in a^G x b^G with uv = c;
it is computed by direct counting over the two materialized classes (u runs
over a^G, membership of u^-1 c is tested against b^G), never by enumerating
the whole group and never through character sums."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .groupcore import ConjClass, ExtElem, GroupHandle

_LABEL_DIR = Path(__file__).parent / "data" / "atlas_labels"


class StructConstError(RuntimeError):
    pass


@dataclass(frozen=True)
class PairCount:
    class_a: tuple[int, int]  # fingerprints (element order, class size)
    class_b: tuple[int, int]
    target: ExtElem
    count: int


def count_pairs(a: ConjClass, b: ConjClass, c: ExtElem, threads: int = 1) -> int:
    """Exact #{(u, v) in a x b : uv = c}."""
    ops = a.group.space.ops
    if threads and threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        chunk = max(1, len(a.members) // threads)
        parts = [a.members[i : i + chunk] for i in range(0, len(a.members), chunk)]
        with ThreadPoolExecutor(max_workers=threads) as ex:
            futs = [ex.submit(ops.count_pairs, part, b.member_set, c.key) for part in parts]
            return sum(f.result() for f in futs)
    return ops.count_pairs(a.members, b.member_set, c.key)


def pair_count(a: ConjClass, b: ConjClass, c: ExtElem, threads: int = 1) -> PairCount:
    return PairCount(a.fingerprint, b.fingerprint, c, count_pairs(a, b, c, threads))


def sum_rule_check(a: ConjClass, b: ConjClass, all_classes: list[ConjClass]) -> bool:
    """Completeness identity: sum over class reps c of m(a,b,c)*|c^G| must
    equal |a^G| * |b^G|; needs the full class list of the group."""
    total = sum(count_pairs(a, b, c.rep) * c.size for c in all_classes)
    return total == a.size * b.size


# -- reference labels


@dataclass
class LabelRow:
    label: str
    element_order: int
    centralizer_order: int


@dataclass
class Labeling:
    """Outcome of matching computed classes against a reference table."""

    assignments: dict[int, tuple[str, ...]]  # class index -> candidate labels
    unmatched_classes: list[int] = field(default_factory=list)
    unused_labels: list[str] = field(default_factory=list)

    def unique(self, idx: int) -> str:
        labs = self.assignments[idx]
        if len(labs) != 1:
            raise StructConstError(f"ambiguous labels {labs} for class #{idx}")
        return labs[0]

    def find(self, label: str) -> list[int]:
        return [i for i, labs in self.assignments.items() if label in labs]

    @property
    def ambiguous(self) -> dict[int, tuple[str, ...]]:
        return {i: l for i, l in self.assignments.items() if len(l) > 1}


def atlas_match(classes: list[ConjClass], reference: list[LabelRow],
                group_order: int | None = None) -> Labeling:
    """Match classes to reference labels by (element order, centralizer
    order).  Classes sharing a fingerprint with several rows get the whole
    unordered label set (published tables note such interchanges); nothing is
    ever silently assigned."""
    if group_order is None:
        group_order = classes[0].group.order if classes else 0
    by_fp: dict[tuple[int, int], list[str]] = {}
    for row in reference:
        by_fp.setdefault((row.element_order, row.centralizer_order), []).append(row.label)
    assignments: dict[int, tuple[str, ...]] = {}
    unmatched = []
    used: set[str] = set()
    for i, c in enumerate(classes):
        fp = (c.element_order, group_order // c.size)
        labs = by_fp.get(fp)
        if not labs:
            unmatched.append(i)
            continue
        matching_classes = [
            j for j, d in enumerate(classes)
            if (d.element_order, group_order // d.size) == fp
        ]
        if len(labs) == 1 and len(matching_classes) == 1:
            assignments[i] = (labs[0],)
        elif len(labs) == len(matching_classes):
            assignments[i] = tuple(sorted(labs))  # forced ambiguity, flagged
        else:
            raise StructConstError(
                f"inconsistent reference: {len(labs)} labels for fingerprint {fp} "
                f"but {len(matching_classes)} computed classes")
        used.update(labs)
    unused = [r.label for r in reference if r.label not in used]
    return Labeling(assignments, unmatched, unused)


def load_reference(name: str) -> tuple[str, int, list[LabelRow]]:
    """Shipped reference table: (group spec string, order, label rows)."""
    path = _LABEL_DIR / f"{name}.json"
    if not path.exists():
        raise StructConstError(f"no reference label table {name!r}")
    doc = json.loads(path.read_text())
    rows = [LabelRow(r["label"], r["element_order"], r["centralizer_order"])
            for r in doc["classes"]]
    return doc["group"], doc["order"], rows


def reference_name_for(group_name: str) -> str:
    return group_name.replace("(", "_").replace(")", "").replace(",", "_").replace(":", ".")


def label_classes(G: GroupHandle, classes: list[ConjClass]) -> Labeling:
    """Label computed classes of G against its shipped reference table."""
    _, order, rows = load_reference(reference_name_for(G.name))
    if order != G.order:
        raise StructConstError("reference table order mismatch")
    return atlas_match(classes, rows, G.order)
