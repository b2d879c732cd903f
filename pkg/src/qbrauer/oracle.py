"""Independent correctness oracles for the multiplication engine.

Two oracles, both deliberately built without the rewriting engine:

* :class:`FreeQuotientOracle` — the algebra as a quotient of the free
  algebra on the generator symbols by the defining relations, realized
  through a terminating word-rewriting system (every rule strictly
  decreases the degree-lexicographic order).  Linear span saturation over
  words of increasing length discovers the basis; the dimension must come
  out to exactly (2n-1)!!.  Only n <= 3 is supported, which keeps the
  hand-oriented rule set small and checkable.

* Brauer-diagram concatenation with an integer loop parameter, used to
  validate classical limits (z = q^a, then q -> 1) of structure constants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .coefficients import A, Coeff, DELTA, ONE, Q, Z
from .combinatorics import Perm

Word = Tuple[str, ...]  # letters like "T1", "T2", "E"
Vector = Dict[Word, Coeff]


class OracleError(ValueError):
    pass


def _vadd(out: Vector, w: Word, c: Coeff) -> None:
    v = out.get(w)
    v = c if v is None else v + c
    if v:
        out[w] = v
    else:
        out.pop(w, None)


class FreeQuotientOracle:
    """Quotient of the free algebra on {T_1..T_{n-1}, E} by the defining
    relations, for n <= 3."""

    def __init__(self, n: int):
        if n not in (2, 3):
            raise OracleError("free-quotient oracle supports n = 2 and 3 only")
        self.n = n
        # Oriented rules lhs -> sum of (word, coeff); each application
        # strictly decreases (len(word), word) with letter order E > T2 > T1,
        # so rewriting terminates unconditionally.
        rules: Dict[Word, List[Tuple[Word, Coeff]]] = {
            ("T1", "T1"): [(("T1",), A), ((), ONE)],
            ("E", "E"): [(("E",), DELTA)],
            ("T1", "E"): [(("E",), Q)],
            ("E", "T1"): [(("E",), Q)],
        }
        if n == 3:
            rules[("T2", "T2")] = [(("T2",), A), ((), ONE)]
            rules[("T2", "T1", "T2")] = [(("T1", "T2", "T1"), ONE)]
            rules[("E", "T2", "E")] = [(("E",), Z)]
        self.rules = rules
        self._max_rule = max(len(k) for k in rules)
        self.dimension_target = 1
        for k in range(2 * n - 1, 0, -2):
            self.dimension_target *= k
        self.basis = self._saturate()

    # -- rewriting ----------------------------------------------------------

    def _step(self, w: Word):
        """Leftmost innermost rule application, or None if irreducible."""
        for start in range(len(w)):
            for size in range(2, self._max_rule + 1):
                if start + size > len(w):
                    break
                body = w[start : start + size]
                rhs = self.rules.get(body)
                if rhs is not None:
                    return start, size, rhs
        return None

    def nf(self, w: Sequence[str]) -> Vector:
        """Normal form of a free word as a combination of irreducible words."""
        pending: Vector = {tuple(w): ONE}
        done: Vector = {}
        while pending:
            word, c = pending.popitem()
            hit = self._step(word)
            if hit is None:
                _vadd(done, word, c)
                continue
            start, size, rhs = hit
            for body, rc in rhs:
                _vadd(pending, word[:start] + body + word[start + size :], c * rc)
        return done

    def _saturate(self) -> Tuple[Word, ...]:
        """Span saturation: enumerate words of increasing length, keeping the
        irreducible ones, until no word extends further."""
        letters = ["T1", "E"] if self.n == 2 else ["T1", "T2", "E"]
        basis: List[Word] = [()]
        frontier: List[Word] = [()]
        while frontier:
            new: List[Word] = []
            for w in frontier:
                for g in letters:
                    cand = w + (g,)
                    if self._step(cand) is None:
                        new.append(cand)
            basis.extend(new)
            frontier = new
            if len(basis) > self.dimension_target:
                raise OracleError(
                    f"dimension overshoot: found {len(basis)} irreducible "
                    f"words, expected {self.dimension_target}"
                )
        if len(basis) != self.dimension_target:
            raise OracleError(
                f"span saturation stopped at dimension {len(basis)}, "
                f"expected {self.dimension_target}"
            )
        return tuple(basis)

    # -- algebra operations --------------------------------------------------

    def mul(self, a: Vector, b: Vector) -> Vector:
        out: Vector = {}
        for wa, ca in a.items():
            for wb, cb in b.items():
                for w, c in self.nf(wa + wb).items():
                    _vadd(out, w, ca * cb * c)
        return out


# ---------------------------------------------------------------------------
# Brauer diagrams (classical limit target)
# ---------------------------------------------------------------------------

Point = Tuple[str, int]  # ("t", i) top row, ("b", i) bottom row
Diagram = FrozenSet[FrozenSet[Point]]


def perm_diagram(p: Perm, n: int) -> Diagram:
    return frozenset(
        frozenset({("t", i), ("b", p(i))}) for i in range(1, n + 1)
    )


def e1_diagram(n: int) -> Diagram:
    arcs = [frozenset({("t", 1), ("t", 2)}), frozenset({("b", 1), ("b", 2)})]
    arcs += [frozenset({("t", i), ("b", i)}) for i in range(3, n + 1)]
    return frozenset(arcs)


def identity_diagram(n: int) -> Diagram:
    return perm_diagram(Perm([]), n)


def concat(d1: Diagram, d2: Diagram, n: int) -> Tuple[Diagram, int]:
    """Stack d1 on top of d2; return (resulting diagram, closed loop count)."""
    # middle row: bottom of d1 glued to top of d2; union-find over tagged points
    def tag(layer: str, pt: Point) -> Tuple[str, str, int]:
        row, i = pt
        if layer == "hi":
            return ("top", row, i) if row == "t" else ("mid", "m", i)
        return ("mid", "m", i) if row == "t" else ("bot", row, i)

    parent: Dict[Tuple, Tuple] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    edges: List[Tuple[Tuple, Tuple]] = []
    for layer, d in (("hi", d1), ("lo", d2)):
        for arc in d:
            a, b = tuple(arc)
            edges.append((tag(layer, a), tag(layer, b)))
    for x, y in edges:
        union(x, y)

    # each connected component contains 0 or 2 outer points (top/bot);
    # components with none are closed loops
    comp_outer: Dict[Tuple, List[Tuple]] = {}
    comp_seen: Dict[Tuple, bool] = {}
    for x, y in edges:
        for v in (x, y):
            r = find(v)
            comp_seen[r] = True
            if v[0] != "mid":
                comp_outer.setdefault(r, [])
                if v not in comp_outer[r]:
                    comp_outer[r].append(v)
    loops = 0
    arcs: List[FrozenSet[Point]] = []
    for r in comp_seen:
        outer = comp_outer.get(r, [])
        if not outer:
            loops += 1
        elif len(outer) == 2:
            pts = []
            for kind, row, i in outer:
                pts.append((("t", i) if kind == "top" else ("b", i)))
            arcs.append(frozenset(pts))
        else:
            raise OracleError("malformed diagram concatenation")
    return frozenset(arcs), loops


def brauer_mul(
    d1: Diagram, d2: Diagram, n: int, a: int
) -> Tuple[Diagram, Fraction]:
    """Product in the Brauer algebra with loop parameter a."""
    d, loops = concat(d1, d2, n)
    return d, Fraction(a) ** loops


def diagram_of_letters(letters: Sequence[Tuple], n: int) -> Tuple[Diagram, int]:
    """Diagram of a product of generator letters (T, Tinv, E1 symbols as used
    by the engine); Tinv maps to the same transposition as T in the classical
    limit.  Returns (diagram, loop count accumulated)."""
    from .combinatorics import s

    d = identity_diagram(n)
    loops = 0
    for g in letters:
        if g == ("E",):
            step = e1_diagram(n)
        else:
            step = perm_diagram(s(g[1]), n)
        d, k = concat(d, step, n)
        loops += k
    return d, loops
