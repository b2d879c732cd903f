"""Partitions, tableaux, permutations, coset representatives and orders.

Conventions fixed here and used everywhere:
  * Permutations are bijections of a window of integers; the product p * q
    means "apply p first, then q": (p * q)(x) = q(p(x)).  This matches
    left-to-right composition of generator words.
  * s(i) swaps i and i+1.  seg(i, j) is the length-|i-j| element moving i to
    j through adjacent swaps: for i < j it is s_i s_{i+1} ... s_{j-1}, for
    i > j it is s_{i-1} s_{i-2} ... s_j, and for i = j the identity.
  * Partitions are tuples of weakly decreasing positive integers; the empty
    partition is ().
  * Labels (f, lam) are ordered with larger f strictly smaller, and equal f
    compared by dominance of the partitions.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

Partition = Tuple[int, ...]


class CombinatoricsError(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


class Perm:
    """A permutation fixing everything outside a finite window.

    Stored as the image tuple of the window [start, start + len - 1], trimmed
    so that the first and last window points are moved (canonical form).
    """

    __slots__ = ("start", "images", "_hash")

    def __init__(self, images: Sequence[int], start: int = 1):
        images = tuple(images)
        # canonicalize: trim fixed endpoints
        lo, hi = 0, len(images)
        while lo < hi and images[lo] == start + lo:
            lo += 1
        while hi > lo and images[hi - 1] == start + hi - 1:
            hi -= 1
        self.start = start + lo if hi > lo else 1
        self.images = images[lo:hi]
        self._hash = None
        if sorted(self.images) != list(
            range(self.start, self.start + len(self.images))
        ):
            raise CombinatoricsError(f"not a bijection of its window: {images}")

    # -- basics --------------------------------------------------------------

    def __call__(self, x: int) -> int:
        idx = x - self.start
        if 0 <= idx < len(self.images):
            return self.images[idx]
        return x

    def is_identity(self) -> bool:
        return not self.images

    def __eq__(self, other):
        return (
            isinstance(other, Perm)
            and self.start == other.start
            and self.images == other.images
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.start, self.images))
        return self._hash

    def __repr__(self):
        if not self.images:
            return "Perm(id)"
        return f"Perm({list(self.images)}, start={self.start})"

    # -- group operations ------------------------------------------------------

    def __mul__(self, other: "Perm") -> "Perm":
        """(self * other)(x) = other(self(x)): apply self first."""
        if not self.images:
            return other
        if not other.images:
            return self
        lo = min(self.start, other.start)
        hi = max(
            self.start + len(self.images), other.start + len(other.images)
        )
        return Perm([other(self(x)) for x in range(lo, hi)], lo)

    def inv(self) -> "Perm":
        if not self.images:
            return self
        out = [0] * len(self.images)
        for k, v in enumerate(self.images):
            out[v - self.start] = self.start + k
        return Perm(out, self.start)

    # -- Coxeter data ----------------------------------------------------------

    def length(self) -> int:
        """Inversion count = Coxeter length."""
        im = self.images
        return sum(
            1
            for a, b in combinations(range(len(im)), 2)
            if im[a] > im[b]
        )

    def right_descents(self) -> List[int]:
        """Indices i with length(self * s(i)) < length(self).

        With left-to-right composition, self * s(i) swaps the values i, i+1,
        so i is a descent when i+1 occurs before i in the one-line form."""
        return self.inv().left_descents()

    def left_descents(self) -> List[int]:
        """Indices i with length(s(i) * self) < length(self)."""
        out = []
        for k in range(len(self.images) - 1):
            if self.images[k] > self.images[k + 1]:
                out.append(self.start + k)
        return out

    def word(self) -> Tuple[int, ...]:
        """A reduced word (smallest right descent peeled last)."""
        w = self
        rev = []
        while True:
            ds = w.right_descents()
            if not ds:
                break
            i = ds[0]
            rev.append(i)
            w = w * s(i)
        return tuple(reversed(rev))

    def min_window(self) -> Tuple[int, int]:
        """Smallest window [lo, hi] containing all moved points (id: (1, 0))."""
        if not self.images:
            return (1, 0)
        return (self.start, self.start + len(self.images) - 1)

    def supported_in(self, lo: int, hi: int) -> bool:
        a, b = self.min_window()
        return a > b or (lo <= a and b <= hi)

    def restrict_split(self, cut: int) -> Tuple["Perm", "Perm"]:
        """Split as a product of a part supported in [.., cut] and one in
        [cut+1, ..]; raises if the permutation does not preserve the cut."""
        lo, hi = self.min_window()
        if lo > hi:
            return IDENTITY, IDENTITY
        low = [self(x) for x in range(min(lo, 1), cut + 1)]
        high = [self(x) for x in range(cut + 1, hi + 1)]
        if any(v > cut for v in low) or any(v <= cut for v in high):
            raise CombinatoricsError("permutation does not preserve the cut")
        left = Perm(low, min(lo, 1)) if low else IDENTITY
        right = Perm(high, cut + 1) if high else IDENTITY
        return left, right

    def one_line(self, lo: int, hi: int) -> List[int]:
        return [self(x) for x in range(lo, hi + 1)]


IDENTITY = Perm(())


def s(i: int) -> Perm:
    """Adjacent transposition swapping i and i+1."""
    return Perm((i + 1, i), i)


def perm_from_word(word: Sequence[int]) -> Perm:
    w = IDENTITY
    for i in word:
        w = w * s(i)
    return w


def seg(i: int, j: int) -> Perm:
    """The element s_{i,j}: s_i s_{i+1}...s_{j-1} (i<j), s_{i-1}...s_j (i>j)."""
    return perm_from_word(seg_word(i, j))


def seg_word(i: int, j: int) -> Tuple[int, ...]:
    if i < j:
        return tuple(range(i, j))
    if i > j:
        return tuple(range(i - 1, j - 1, -1))
    return ()


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------


def partitions(d: int, e: Optional[int] = None) -> List[Partition]:
    """All partitions of d, optionally e-restricted (consecutive differences
    and the last part all strictly below e)."""

    def gen(rem: int, maxpart: int) -> Iterator[Partition]:
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, maxpart), 0, -1):
            for rest in gen(rem - first, first):
                yield (first,) + rest

    out = list(gen(d, d if d else 1))
    if e is not None and e != float("inf"):
        out = [lam for lam in out if is_e_restricted(lam, e)]
    return out


def is_e_restricted(lam: Partition, e: int) -> bool:
    ext = list(lam) + [0]
    return all(ext[i] - ext[i + 1] < e for i in range(len(lam)))


def dominance(lam: Partition, mu: Partition) -> str:
    """'gt' if lam strictly dominates mu, 'lt', 'eq', or 'inc'."""
    if sum(lam) != sum(mu):
        raise CombinatoricsError("dominance needs equal sizes")
    if lam == mu:
        return "eq"
    ge = le = True
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a < b:
            ge = False
        if a > b:
            le = False
    if ge:
        return "gt"
    if le:
        return "lt"
    return "inc"


CellLabel = Tuple[int, Partition]


def label_order(a: CellLabel, b: CellLabel) -> str:
    """Order on labels (f, lam): larger f is strictly smaller; equal f
    compared by dominance."""
    (fa, la), (fb, lb) = a, b
    if fa != fb:
        return "lt" if fa > fb else "gt"
    return dominance(la, lb)


def dominance_key(lam: Partition):
    """Total-order key refining dominance (descending partial sums, then lex)."""
    acc, out = 0, []
    for p in lam:
        acc += p
        out.append(acc)
    # pad so comparisons are well-defined across lengths
    return tuple(out) + (acc,) * (sum(lam) - len(out))


def labels(n: int) -> List[CellLabel]:
    """All cell labels (f, lam) with 0 <= f <= n//2, lam a partition of n-2f,
    listed with smaller labels last (larger f last, dominance-descending)."""
    out: List[CellLabel] = []
    for f in range(n // 2 + 1):
        lams = partitions(n - 2 * f)
        lams.sort(key=dominance_key, reverse=True)
        out.extend((f, lam) for lam in lams)
    return out


# ---------------------------------------------------------------------------
# nodes and contents
# ---------------------------------------------------------------------------

Node = Tuple[int, int]


def nodes(lam: Partition) -> Tuple[List[Node], List[Node]]:
    """(removable, addable) nodes, 1-based (row, col)."""
    removable = []
    addable = []
    k = len(lam)
    for r in range(k):
        if r == k - 1 or lam[r] > lam[r + 1]:
            removable.append((r + 1, lam[r]))
        if r == 0 or lam[r] < lam[r - 1]:
            addable.append((r + 1, lam[r] + 1))
    addable.append((k + 1, 1))
    return removable, addable


def content(p: Node) -> int:
    return p[1] - p[0]


def remove_node(lam: Partition, p: Node) -> Partition:
    r = p[0] - 1
    out = list(lam)
    out[r] -= 1
    if out and out[-1] == 0:
        out.pop()
    return tuple(out)


def add_node(lam: Partition, p: Node) -> Partition:
    r = p[0] - 1
    out = list(lam)
    if r == len(out):
        out.append(1)
    else:
        out[r] += 1
    return tuple(out)


def shape_diff(big: Partition, small: Partition) -> Node:
    """The unique node in big but not in small (big = small + one box)."""
    for r in range(len(big)):
        b = big[r]
        a = small[r] if r < len(small) else 0
        if b != a:
            return (r + 1, b)
    raise CombinatoricsError("shapes are equal")


# ---------------------------------------------------------------------------
# standard tableaux
# ---------------------------------------------------------------------------

StandardTableau = Tuple[Tuple[int, ...], ...]


def superstandard(lam: Partition, start: int = 1) -> StandardTableau:
    """Row-reading filling: rows filled left to right, top to bottom."""
    rows = []
    x = start
    for p in lam:
        rows.append(tuple(range(x, x + p)))
        x += p
    return tuple(rows)


def std_tableaux(lam: Partition, start: int = 1) -> List[StandardTableau]:
    """All standard tableaux of shape lam with entries start..start+|lam|-1."""
    n = sum(lam)
    out: List[StandardTableau] = []

    def grow(rows: List[List[int]], x: int):
        if x == start + n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for r in range(len(lam)):
            if len(rows[r]) < lam[r] and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(x)
                grow(rows, x + 1)
                rows[r].pop()

    grow([[] for _ in lam], start)
    return out


def tableau_entry_map(t: StandardTableau) -> dict:
    """entry -> (row, col), 1-based."""
    return {
        v: (r + 1, c + 1) for r, row in enumerate(t) for c, v in enumerate(row)
    }


def coset_word(t: StandardTableau) -> Perm:
    """d(t) with t = t^lam . d(t): sends each entry of the superstandard
    tableau to the entry of t in the same cell."""
    if not t:
        return IDENTITY
    start = min(min(r) for r in t if r)
    lam = tuple(len(r) for r in t)
    tl = superstandard(lam, start)
    n = sum(lam)
    images = [0] * n
    for r in range(len(lam)):
        for c in range(lam[r]):
            images[tl[r][c] - start] = t[r][c]
    return Perm(images, start)


def apply_to_tableau(t: StandardTableau, w: Perm) -> StandardTableau:
    return tuple(tuple(w(v) for v in row) for row in t)


def row_stabilizer_perms(lam: Partition, start: int = 1) -> List[Perm]:
    """All elements of the Young subgroup S_lam (row stabilizer of t^lam)."""
    from itertools import permutations as iperm

    blocks: List[List[Perm]] = []
    x = start
    for p in lam:
        entries = list(range(x, x + p))
        blocks.append(
            [Perm(im, x) for im in iperm(entries)]
        )
        x += p
    out = [IDENTITY]
    for blk in blocks:
        out = [a * b for a in out for b in blk]
    return out


# ---------------------------------------------------------------------------
# coset representatives D_{f,n}
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def coset_reps_D(f: int, n: int) -> Tuple[Perm, ...]:
    """The distinguished representatives
    s_{2f,i_f} s_{2f-1,j_f} ... s_{2,i_1} s_{1,j_1}
    with i_1 < ... < i_f and 2k-1 <= j_k < i_k <= n."""
    if not (0 <= 2 * f <= n):
        raise CombinatoricsError(f"f={f} out of range for n={n}")
    if f == 0:
        return (IDENTITY,)
    out = []
    # choose (j_k, i_k) for k = 1..f with i's increasing
    def rec(k: int, prev_i: int, chosen):
        if k > f:
            out.append(tuple(chosen))
            return
        for ik in range(max(prev_i + 1, 2 * k), n + 1):
            for jk in range(2 * k - 1, ik):
                chosen.append((jk, ik))
                rec(k + 1, ik, chosen)
                chosen.pop()

    rec(1, 0, [])
    reps = []
    for chosen in out:
        w = IDENTITY
        for k in range(f, 0, -1):
            jk, ik = chosen[k - 1]
            w = w * seg(2 * k, ik) * seg(2 * k - 1, jk)
        reps.append(w)
    return tuple(reps)


def pattern_word(f: int, chosen: Sequence[Tuple[int, int]]) -> Tuple[int, ...]:
    """Generator word of the representative for parameter list [(j_k, i_k)]."""
    w: Tuple[int, ...] = ()
    for k in range(len(chosen), 0, -1):
        jk, ik = chosen[k - 1]
        w += seg_word(2 * k, ik) + seg_word(2 * k - 1, jk)
    return w


def d_config(f: int, d: Perm) -> frozenset:
    """Bottom-pair configuration {{d(2k-1), d(2k)}} of a representative."""
    return frozenset(
        frozenset((d(2 * k - 1), d(2 * k))) for k in range(1, f + 1)
    )


@lru_cache(maxsize=None)
def config_to_rep(f: int, n: int) -> dict:
    """Map pair-configuration -> distinguished representative in D_{f,n}."""
    out = {}
    for d in coset_reps_D(f, n):
        cfg = d_config(f, d)
        if cfg in out:
            raise CombinatoricsError("duplicate configuration in D_{f,n}")
        out[cfg] = d
    return out


# ---------------------------------------------------------------------------
# branching
# ---------------------------------------------------------------------------


def branching_list(
    f: int, lam: Partition, n: int
) -> Tuple[List[Partition], int]:
    """Ordered restriction list for the label (f, lam) of the rank-n algebra:
    removals (labels (f, .) at rank n-1) dominance-descending, then additions
    (labels (f-1, .)) dominance-descending.  Returns (list, split_index)."""
    if sum(lam) != n - 2 * f or f < 0:
        raise CombinatoricsError(f"({f}, {lam}) is not a label at rank {n}")
    removable, addable = nodes(lam)
    rem = sorted(
        (remove_node(lam, p) for p in removable),
        key=dominance_key,
        reverse=True,
    )
    if f == 0:
        return rem, len(rem)
    add = sorted(
        (add_node(lam, p) for p in addable), key=dominance_key, reverse=True
    )
    return rem + add, len(rem)


# ---------------------------------------------------------------------------
# up-down tableaux
# ---------------------------------------------------------------------------


class UpDownTableau:
    """A path of partitions (t_0 = empty, t_1, ..., t_n) with one-box steps."""

    __slots__ = ("shapes", "_hash")

    def __init__(self, shapes: Sequence[Partition]):
        self.shapes = tuple(tuple(p) for p in shapes)
        self._hash = None
        if self.shapes[0] != ():
            raise CombinatoricsError("path must start at the empty partition")
        for k in range(1, len(self.shapes)):
            if abs(sum(self.shapes[k]) - sum(self.shapes[k - 1])) != 1:
                raise CombinatoricsError("steps must add or remove one box")

    @property
    def n(self) -> int:
        return len(self.shapes) - 1

    @property
    def shape(self) -> Partition:
        return self.shapes[-1]

    def step(self, k: int) -> Tuple[str, Node]:
        """('add'|'remove', node) describing t_{k-1} -> t_k."""
        a, b = self.shapes[k - 1], self.shapes[k]
        if sum(b) > sum(a):
            return "add", shape_diff(b, a)
        return "remove", shape_diff(a, b)

    def __eq__(self, other):
        return isinstance(other, UpDownTableau) and self.shapes == other.shapes

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.shapes)
        return self._hash

    def __repr__(self):
        return "UD" + repr([list(p) for p in self.shapes])


def updown_tableaux(n: int, lam: Partition) -> List[UpDownTableau]:
    lam = tuple(lam)
    if (n - sum(lam)) % 2 or sum(lam) > n:
        raise CombinatoricsError(f"no paths of length {n} to {lam}")

    paths: List[List[Partition]] = [[()]]
    for _ in range(n):
        nxt = []
        for p in paths:
            cur = p[-1]
            removable, addable = nodes(cur)
            for q in addable:
                nxt.append(p + [add_node(cur, q)])
            for q in removable:
                nxt.append(p + [remove_node(cur, q)])
        paths = nxt
    return [UpDownTableau(p) for p in paths if p[-1] == lam]


def ud_compare(sp: UpDownTableau, tp: UpDownTableau):
    """('eq', None), ('gt'|'lt', k) with k the last differing position, or
    ('inc', k)."""
    if sp.n != tp.n or sp.shape != tp.shape:
        raise CombinatoricsError("paths must share length and final shape")
    if sp.shapes == tp.shapes:
        return ("eq", None)
    k = max(i for i in range(sp.n + 1) if sp.shapes[i] != tp.shapes[i])
    fa = (k - sum(sp.shapes[k])) // 2
    fb = (k - sum(tp.shapes[k])) // 2
    verdict = label_order((fa, sp.shapes[k]), (fb, tp.shapes[k]))
    return (verdict, k)


def ud_sort_key(t: UpDownTableau):
    """Total-order key: larger in the ud order sorts first (a linear
    extension; positions scanned from the end, labels descending)."""
    key = []
    for k in range(t.n, -1, -1):
        f = (k - sum(t.shapes[k])) // 2
        key.append((f, tuple(-x for x in dominance_key(t.shapes[k]))))
    return tuple(key)


# ---------------------------------------------------------------------------
# JM eigenvalues
# ---------------------------------------------------------------------------


def ct_eigenvalue(t: UpDownTableau, k: int):
    """Eigenvalue of the k-th Jucys-Murphy element on the basis vector of t."""
    from .coefficients import A, Coeff, ONE, Q, ZINV

    kind, p = t.step(k)
    c = content(p)
    if kind == "add":
        return (Q ** (2 * c) - ONE) / A
    return (ZINV**2 * Q ** (2 - 2 * c) - ONE) / A
