"""Full Kauffman resolution of diagrams into exact skein vectors.

A diagram with c crossings expands into all 2^c crossingless states; a
state resolved with j positive and c-j negative smoothings contributes
q^(j-(c-j)) times its normal form.  Normal forms per surface:

* annulus: winding-0 loops each contribute the scalar -q^2 - q^-2; the
  surviving core-parallel loops give the basis element z^m;
* marked annulus: one arc of winding n gives theta_n, plus winding-0
  loop scalars; an essential loop next to the arc cannot occur for an
  embedded diagram and is rejected as a structural error;
* marked disk: loops are all trivial (scalar factors); an arc with both
  ends at the same marked point kills the state -- on a disk the inner
  side of such an arc meets the boundary only at that point, so once
  trivial loops are gone it is a trivial arc; the remaining chords with
  their height data form the basis element.

Quotients by boundary-arc ideals drop every state whose normal form
contains a chord between the generator's endpoint pair.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .diagram import (
    Annulus,
    Diagram,
    Disk,
    MarkedAnnulus,
    Surface,
    smoothing_pairs,
    surface_points,
)
from .laurent import LaurentPoly, ONE, q_power
from .sequences import UniPoly

# Scalar of a nullisotopic loop.
LOOP_VALUE = LaurentPoly({2: -1, -2: -1})

DEFAULT_CROSSING_CAP = 24


class StructureError(Exception):
    """A diagram reached a state no embedded diagram can produce."""


class CrossingCapExceeded(ValueError):
    """The diagram has more crossings than the configured expansion cap."""


# -- basis elements -----------------------------------------------------------


@dataclass(frozen=True)
class AnnulusPower:
    """z^m: m disjoint core-parallel loops on the annulus."""

    m: int

    def sort_key(self):
        return (0, self.m)

    def label(self) -> str:
        return "1" if self.m == 0 else f"z^{self.m}"


@dataclass(frozen=True)
class AioArc:
    """theta_n: the inner-to-outer arc of winding n on the marked annulus."""

    n: int

    def sort_key(self):
        # Descending winding, so transport identities read q^n theta_n first.
        return (0, -self.n)

    def label(self) -> str:
        return f"theta_{self.n}"


@dataclass(frozen=True)
class DiskMatching:
    """A crossingless multicurve of chords on a marked disk.

    chords are (point_a, slot_a, point_b, slot_b) with ends ordered by
    (cyclic point index, slot) and the tuple sorted; slot indices are the
    bottom-to-top height order at each marked point.
    """

    points: tuple[str, ...]
    chords: tuple[tuple[str, int, str, int], ...]

    def sort_key(self):
        idx = {p: i for i, p in enumerate(self.points)}
        return (1, tuple((idx[a], sa, idx[b], sb) for a, sa, b, sb in self.chords))

    def end_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for a, _, b, _ in self.chords:
            counts[a] = counts.get(a, 0) + 1
            counts[b] = counts.get(b, 0) + 1
        return counts

    def label(self) -> str:
        if not self.chords:
            return "1"
        counts = self.end_counts()

        def end(p, s):
            return f"{p}@{s}" if counts[p] > 1 else p

        inner = ",".join(f"({end(a, sa)},{end(b, sb)})" for a, sa, b, sb in self.chords)
        return f"chords[{inner}]"

    def chord_pairs(self) -> list[tuple[str, str]]:
        return [(a, b) for a, _, b, _ in self.chords]


BasisElement = AnnulusPower | AioArc | DiskMatching


def _basis_sort_key(elem: BasisElement):
    return (type(elem).__name__, elem.sort_key())


# -- skein vectors -------------------------------------------------------------


class SkeinVector:
    """A finite linear combination of basis elements with Laurent coefficients.

    Zero coefficients are never stored; equality is structural.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[BasisElement, LaurentPoly] | None = None):
        clean = {}
        if terms:
            for b, c in terms.items():
                if not c.is_zero():
                    clean[b] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SkeinVector is immutable")

    @classmethod
    def zero(cls) -> "SkeinVector":
        return cls()

    @classmethod
    def single(cls, elem: BasisElement, coeff: LaurentPoly = ONE) -> "SkeinVector":
        return cls({elem: coeff})

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, elem: BasisElement) -> LaurentPoly:
        return self._terms.get(elem, LaurentPoly())

    def items(self) -> list[tuple[BasisElement, LaurentPoly]]:
        """Terms in canonical basis order."""
        return sorted(self._terms.items(), key=lambda kv: _basis_sort_key(kv[0]))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[BasisElement]:
        return iter(sorted(self._terms, key=_basis_sort_key))

    def __add__(self, other: "SkeinVector") -> "SkeinVector":
        if not isinstance(other, SkeinVector):
            return NotImplemented
        out = dict(self._terms)
        for b, c in other._terms.items():
            s = out.get(b)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(b, None)
            else:
                out[b] = s
        return SkeinVector(out)

    def __sub__(self, other: "SkeinVector") -> "SkeinVector":
        if not isinstance(other, SkeinVector):
            return NotImplemented
        return self + other.scaled(LaurentPoly(-1))

    def scaled(self, s: LaurentPoly | int) -> "SkeinVector":
        if isinstance(s, int):
            s = LaurentPoly(s)
        return SkeinVector({b: c * s for b, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkeinVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __reduce__(self):
        return (SkeinVector, (dict(self._terms) if isinstance(self._terms, dict) else self._terms,))

    def to_json_list(self) -> list[dict]:
        return [
            {"basis": b.label(), "coeff": c.to_json_dict()} for b, c in self.items()
        ]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for b, c in self.items():
            cs = str(c)
            if " " in cs or cs.startswith("-"):
                cs = f"({cs})"
            bl = b.label()
            if bl == "1":
                parts.append(str(c) if len(self._terms) == 1 else cs)
            elif cs == "1":
                parts.append(bl)
            else:
                parts.append(f"{cs}·{bl}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SkeinVector('{self}')"


# -- boundary-arc ideals --------------------------------------------------------


@dataclass(frozen=True)
class IdealSpec:
    """A set of boundary chords (unordered adjacent marked-point pairs)
    generating a two-sided ideal."""

    generators: tuple[tuple[str, str], ...]

    @classmethod
    def of_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "IdealSpec":
        normed = {tuple(sorted(p)) for p in pairs}
        return cls(tuple(sorted(normed)))

    def contains_pair(self, a: str, b: str) -> bool:
        return tuple(sorted((a, b))) in set(self.generators)

    def validate_on(self, surface: Surface) -> None:
        """Every generator must join neighbours in the cyclic point order."""
        if not isinstance(surface, Disk):
            raise ValueError("boundary-arc ideals are only supported on disks")
        pts = surface.points
        n = len(pts)
        adjacent = {tuple(sorted((pts[i], pts[(i + 1) % n]))) for i in range(n)}
        for g in self.generators:
            if g not in adjacent:
                raise ValueError(f"ideal generator {g} is not a boundary chord of {pts}")


def grid_ideal(n: int) -> IdealSpec:
    """The ideal used with the k-by-n grid diagrams: boundary arcs
    p0p1, ..., p{n-1}p{n} (note p{n}p{n+1} is deliberately not in it)."""
    return IdealSpec.of_pairs((f"p{i}", f"p{i + 1}") for i in range(n))


def full_boundary_ideal(surface: Disk) -> IdealSpec:
    """The ideal of all boundary arcs between cyclically adjacent points."""
    pts = surface.points
    n = len(pts)
    return IdealSpec.of_pairs((pts[i], pts[(i + 1) % n]) for i in range(n))


# -- classification of crossingless diagrams -------------------------------------


@dataclass(frozen=True)
class ArcComponent:
    """An arc between boundary endpoints; winding is summed seam count
    traversed from end a to end b."""

    a_point: str
    a_slot: int
    b_point: str
    b_slot: int
    winding: int


@dataclass(frozen=True)
class Components:
    loops: tuple[int, ...]
    arcs: tuple[ArcComponent, ...]


def classify_components(d: Diagram) -> Components:
    """Label every component of a crossingless diagram.

    Arcs are oriented from the end with the smaller (point index, slot),
    so marked-annulus arcs are read from p1 and their winding is the
    theta index.
    """
    if d.crossings:
        raise ValueError("classification requires a crossingless diagram")
    order = {p: i for i, p in enumerate(surface_points(d.surface))}
    arcs = []
    for e in d.edges:
        (_, pa, sa) = e.a
        (_, pb, sb) = e.b
        if (order[pa], sa) <= (order[pb], sb):
            arcs.append(ArcComponent(pa, sa, pb, sb, e.seam))
        else:
            arcs.append(ArcComponent(pb, sb, pa, sa, -e.seam))
    arcs.sort(key=lambda a: (order[a.a_point], a.a_slot))
    return Components(loops=d.loops, arcs=tuple(arcs))


def _reduce_state(
    surface: Surface,
    points: tuple[str, ...],
    order: dict[str, int],
    arcs: list[tuple[str, int, str, int, int]],
    loop_windings: Iterable[int],
) -> tuple[BasisElement | None, int]:
    """Map a crossingless state to (basis element, trivial-loop count).

    Returns (None, 0) when the state is killed by the trivial-arc rule.
    """
    trivial = 0
    essential = 0
    for w in loop_windings:
        w = abs(w)
        if w == 0:
            trivial += 1
        elif w == 1:
            essential += 1
        else:
            raise StructureError(f"embedded loops cannot wind {w} times")
    if isinstance(surface, Annulus):
        if arcs:
            raise StructureError("the annulus model has no marked points for arcs")
        return AnnulusPower(essential), trivial
    if isinstance(surface, MarkedAnnulus):
        if len(arcs) != 1:
            raise StructureError("a marked-annulus tangle has exactly one arc")
        if essential:
            raise StructureError(
                "an essential loop next to the arc is impossible for an embedded diagram"
            )
        a, sa, b, sb, w = arcs[0]
        if a != "p1":
            a, sa, b, sb, w = b, sb, a, sa, -w
        return AioArc(w), trivial
    # Disk: loops carry no seam, arcs between equal points kill the state.
    if essential:
        raise StructureError("disk loops cannot wind")
    chords = []
    for a, sa, b, sb, _ in arcs:
        if a == b:
            return None, 0
        if (order[a], sa) <= (order[b], sb):
            chords.append((a, sa, b, sb))
        else:
            chords.append((b, sb, a, sa))
    chords.sort(key=lambda c: (order[c[0]], c[1], order[c[2]], c[3]))
    return DiskMatching(points, tuple(chords)), trivial


def normal_form(d: Diagram) -> SkeinVector:
    """Reduce a crossingless diagram to (basis element, scalar) or zero."""
    comps = classify_components(d)
    arcs = [(a.a_point, a.a_slot, a.b_point, a.b_slot, a.winding) for a in comps.arcs]
    points = surface_points(d.surface)
    order = {p: i for i, p in enumerate(points)}
    elem, trivial = _reduce_state(d.surface, points, order, arcs, comps.loops)
    if elem is None:
        return SkeinVector.zero()
    return SkeinVector.single(elem, LOOP_VALUE**trivial)


# -- the state-sum engine ---------------------------------------------------------


class _Scanner:
    """A diagram compiled to flat arrays for fast iteration over states.

    Nodes are crossing ports (4*ci + port) followed by boundary slots;
    each node has one incident diagram edge, and each port additionally
    one smoothing partner per sign.
    """

    def __init__(self, d: Diagram):
        self.surface = d.surface
        self.points = surface_points(d.surface)
        crossings = list(d.crossings)
        c = len(crossings)
        self.c = c
        cid_index = {cr.id: ci for ci, cr in enumerate(crossings)}
        slot_node: dict[tuple[str, int], int] = {}
        self.slot_info: list[tuple[str, int]] = []
        nxt = 4 * c
        for p, count in d.slots:
            for s in range(count):
                slot_node[(p, s)] = nxt
                self.slot_info.append((p, s))
                nxt += 1
        self.n_nodes = nxt
        self.slot_nodes = list(range(4 * c, nxt))

        def node_of(att):
            if att[0] == "X":
                return 4 * cid_index[att[1]] + att[2]
            return slot_node[(att[1], att[2])]

        to = [-1] * nxt
        w = [0] * nxt
        for e in d.edges:
            na, nb = node_of(e.a), node_of(e.b)
            to[na], w[na] = nb, e.seam
            to[nb], w[nb] = na, -e.seam
        self.to = to
        self.w = w
        pos = [0] * (4 * c)
        neg = [0] * (4 * c)
        for ci, cr in enumerate(crossings):
            for i, j in smoothing_pairs(cr.over, +1):
                pos[4 * ci + i] = 4 * ci + j
                pos[4 * ci + j] = 4 * ci + i
            for i, j in smoothing_pairs(cr.over, -1):
                neg[4 * ci + i] = 4 * ci + j
                neg[4 * ci + j] = 4 * ci + i
        self.pos = pos
        self.neg = neg
        self.base_loops = list(d.loops)

    def components(self, mask: int):
        """Arcs and loop windings of the state where bit ci = 1 means the
        ci-th crossing is resolved positively."""
        to, w, pos, neg = self.to, self.w, self.pos, self.neg
        ports = 4 * self.c
        seen = bytearray(self.n_nodes)
        arcs = []
        for s in self.slot_nodes:
            if seen[s]:
                continue
            seen[s] = 1
            wind = w[s]
            v = to[s]
            while v < ports:
                seen[v] = 1
                u = pos[v] if (mask >> (v >> 2)) & 1 else neg[v]
                seen[u] = 1
                wind += w[u]
                v = to[u]
            seen[v] = 1
            pa, sa = self.slot_info[s - ports]
            pb, sb = self.slot_info[v - ports]
            arcs.append((pa, sa, pb, sb, wind))
        loops = list(self.base_loops)
        for v0 in range(ports):
            if seen[v0]:
                continue
            wind = 0
            v = v0
            while not seen[v]:
                seen[v] = 1
                u = pos[v] if (mask >> (v >> 2)) & 1 else neg[v]
                seen[u] = 1
                wind += w[u]
                v = to[u]
            loops.append(abs(wind))
        return arcs, loops


def _scan_range(
    d: Diagram, lo: int, hi: int, ideal: IdealSpec | None
) -> dict[BasisElement, dict[int, int]]:
    """Accumulate the contributions of states lo..hi-1 as raw term dicts."""
    scanner = _Scanner(d)
    c = scanner.c
    points = scanner.points
    order = {p: i for i, p in enumerate(points)}
    surface = scanner.surface
    gens = None if ideal is None else set(ideal.generators)
    delta_pows = [ONE.terms()]
    acc: dict[BasisElement, dict[int, int]] = {}
    for mask in range(lo, hi):
        arcs, loops = scanner.components(mask)
        elem, trivial = _reduce_state(surface, points, order, arcs, loops)
        if elem is None:
            continue
        if gens is not None and isinstance(elem, DiskMatching):
            if any(
                ((a, b) if a <= b else (b, a)) in gens for a, b in elem.chord_pairs()
            ):
                continue
        while trivial >= len(delta_pows):
            last = LaurentPoly(delta_pows[-1])
            delta_pows.append((last * LOOP_VALUE).terms())
        shift = 2 * bin(mask).count("1") - c
        bucket = acc.setdefault(elem, {})
        for e, coeff in delta_pows[trivial].items():
            e += shift
            s = bucket.get(e, 0) + coeff
            if s:
                bucket[e] = s
            else:
                del bucket[e]
    return acc


def _merge_raw(
    target: dict[BasisElement, dict[int, int]],
    part: dict[BasisElement, dict[int, int]],
) -> None:
    for elem, terms in part.items():
        bucket = target.setdefault(elem, {})
        for e, coeff in terms.items():
            s = bucket.get(e, 0) + coeff
            if s:
                bucket[e] = s
            else:
                del bucket[e]


def _resolve(
    d: Diagram,
    ideal: IdealSpec | None,
    cap: int,
    jobs: int,
) -> SkeinVector:
    c = d.crossing_count
    if c > cap:
        raise CrossingCapExceeded(
            f"diagram has {c} crossings; the expansion cap is {cap} "
            f"(2^{c} states exceed the configured budget)"
        )
    total = 1 << c
    if jobs <= 1 or total < 1024:
        raw = _scan_range(d, 0, total, ideal)
    else:
        jobs = min(jobs, total)
        bounds = [total * i // jobs for i in range(jobs + 1)]
        raw = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_scan_range, d, bounds[i], bounds[i + 1], ideal)
                for i in range(jobs)
            ]
            for f in futures:
                _merge_raw(raw, f.result())
    return SkeinVector({elem: LaurentPoly(terms) for elem, terms in raw.items()})


def resolve_all(
    d: Diagram, *, cap: int = DEFAULT_CROSSING_CAP, jobs: int = 1
) -> SkeinVector:
    """Sum q^(#pos - #neg) * normal_form(state) over all 2^c resolutions."""
    return _resolve(d, None, cap, jobs)


def resolve_all_mod(
    d: Diagram,
    ideal: IdealSpec,
    *,
    cap: int = DEFAULT_CROSSING_CAP,
    jobs: int = 1,
) -> SkeinVector:
    """As resolve_all, but states whose normal form contains an ideal
    generator chord are discarded."""
    ideal.validate_on(d.surface)
    return _resolve(d, ideal, cap, jobs)


# -- the transport operator ------------------------------------------------------


def theta_bullet(
    p: UniPoly, *, cap: int = DEFAULT_CROSSING_CAP, jobs: int = 1
) -> SkeinVector:
    """The inner-to-outer arc stacked above p(z), expanded exactly.

    Linear in p: each power t^k contributes its coefficient times the full
    resolution of the arc over k core loops.
    """
    from .diagram import build_theta_over_cores

    out = SkeinVector.zero()
    for k in range(p.degree + 1):
        ck = p.coefficient(k)
        if ck.is_zero():
            continue
        out = out + resolve_all(build_theta_over_cores(k), cap=cap, jobs=jobs).scaled(ck)
    return out


def theta_transport_target(n: int) -> SkeinVector:
    """q^n theta_n + q^-n theta_-n, the expected transport of T_n."""
    if n < 1:
        raise ValueError("the transport identity is stated for n >= 1")
    return SkeinVector({AioArc(n): q_power(n), AioArc(-n): q_power(-n)})
