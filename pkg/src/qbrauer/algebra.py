"""The q-Brauer algebra: normal-form basis and rewriting multiplication.

Basis monomials are words sigma(T_{d1}) E^f T_w T_{d2} with d1, d2 in the
distinguished coset set D_{f,n} and w a permutation of the window
{2f+1, ..., n}.  Right multiplication by a generator is computed by two
mutually recursive rewriting primitives:

  * reduce(f, u): normal form of E^f T_u for an arbitrary permutation u,
    as a combination of E^f T_w T_d terms (the deficiency never changes);
  * sand(f, v):  normal form of E^f T_v E_1, a combination of layer-f
    (contraction) and layer-(f+1) (merge) terms.

Left multiplication is reduced to right multiplication through the
anti-involution sigma, which acts on basis words by an exact flip
(f, d1, w, d2) -> (f, d2, w^{-1}, d1).

Defining relations (the braid and quadratic relations of the T_i together
with):
    E_1^2 = delta E_1,   T_1 E_1 = E_1 T_1 = q E_1,   E_1 T_2 E_1 = z E_1,
    T_i E_1 = E_1 T_i (i >= 3),
    E^(k+1) = E_1 T_{2,2k+2} T_{2k+1,1}^{-1} E^k.
The rule set below is validated empirically: closure over the (2n-1)!!
normal words, the relations in the regular representation, and agreement
with an independent free-quotient oracle at small rank.
"""

from __future__ import annotations

import os
import json
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

from .coefficients import (
    A,
    Coeff,
    DELTA,
    ONE,
    Q,
    QINV,
    Z,
    ZERO,
    ZINV,
    parse_coeff,
)
from .combinatorics import (
    IDENTITY,
    Perm,
    config_to_rep,
    coset_reps_D,
    d_config,
    perm_from_word,
    s,
    seg,
    seg_word,
)


class AlgebraError(ValueError):
    pass


class StuckWordError(AlgebraError):
    """The rewriting system could not bring a word to normal form."""

    def __init__(self, msg, f=None, word=None):
        super().__init__(msg)
        self.f = f
        self.word = word


class NormalWord(NamedTuple):
    f: int
    d1: Perm
    w: Perm
    d2: Perm


# generator symbols
def T(i: int):
    return ("T", i)


def Tinv(i: int):
    return ("Tinv", i)


E1 = ("E",)


class AlgebraElt:
    """Sparse combination of normal words of the rank-n algebra."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[NormalWord, Coeff] = None):
        self.n = n
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    def _check(self, other):
        if self.n != other.n:
            raise AlgebraError(f"rank mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "AlgebraElt") -> "AlgebraElt":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, ZERO) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        r = AlgebraElt(self.n)
        r.terms = out
        return r

    def __neg__(self):
        r = AlgebraElt(self.n)
        r.terms = {w: -c for w, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Coeff) -> "AlgebraElt":
        r = AlgebraElt(self.n)
        if c:
            r.terms = {w: c * v for w, v in self.terms.items()}
        return r

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElt)
            and self.n == other.n
            and self.terms == other.terms
        )

    def is_zero(self):
        return not self.terms

    def coeff(self, w: NormalWord) -> Coeff:
        return self.terms.get(w, ZERO)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, c in sorted(
            self.terms.items(), key=lambda t: (t[0].f, t[0].d1.word(), t[0].w.word(), t[0].d2.word())
        ):
            bits.append(
                f"({c})*[f={w.f};d1={list(w.d1.word())};w={list(w.w.word())};"
                f"d2={list(w.d2.word())}]"
            )
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# engine
# ---------------------------------------------------------------------------

_STEP_BOUND = 10**6


class Engine:
    """Rewriting engine for a fixed rank n; memoizes reduce and sand."""

    def __init__(self, n: int):
        if n < 1:
            raise AlgebraError("rank must be >= 1")
        self.n = n
        self._reduce_memo: Dict[Tuple[int, Perm], Dict] = {}
        self._sand_memo: Dict[Tuple[int, Perm], Dict] = {}
        self._steps = 0
        self._inflight = set()
        # sanity of the distinguished representatives: no left descent in the
        # window, so T_w T_d concatenations are always reduced
        for f in range(n // 2 + 1):
            for d in coset_reps_D(f, n):
                assert all(m <= 2 * f for m in d.left_descents()), (f, d)

    # -- helpers -----------------------------------------------------------------

    def _tick(self, f, word):
        self._steps += 1
        if self._steps > _STEP_BOUND:
            raise StuckWordError(
                f"step bound exceeded while normalizing E^{f} T_{list(word.word())}",
                f,
                word,
            )

    def zero(self) -> AlgebraElt:
        return AlgebraElt(self.n)

    def one(self) -> AlgebraElt:
        return AlgebraElt(self.n, {NormalWord(0, IDENTITY, IDENTITY, IDENTITY): ONE})

    # -- reduce: E^f T_u --------------------------------------------------------

    def reduce(self, f: int, u: Perm) -> Dict[Tuple[Perm, Perm], Coeff]:
        """Normal form of E^f T_u as {(w, d): coeff} with w in the window
        S_{2f+1,n} and d in D_{f,n}."""
        key = (f, u)
        hit = self._reduce_memo.get(key)
        if hit is not None:
            return hit
        if key in self._inflight:
            raise StuckWordError(
                f"rewriting cycle at E^{f} T_{list(u.word())}", f, u
            )
        self._inflight.add(key)
        try:
            out = self._reduce_impl(f, u)
        finally:
            self._inflight.discard(key)
        self._reduce_memo[key] = out
        return out

    def _reduce_impl(self, f, u):
        self._tick(f, u)
        if f == 0:
            return {(u, IDENTITY): ONE}
        # (1) factor through the stabilizer coset: u = sigma . d
        cfg = frozenset(
            frozenset((u(2 * k - 1), u(2 * k))) for k in range(1, f + 1)
        )
        d = config_to_rep(f, self.n)[cfg]
        sigma = u * d.inv()
        lo, hi = sigma.min_window()
        if lo > 2 * f or lo > hi:
            # sigma is a pure window element
            omega = sigma
            if u.length() == omega.length() + d.length():
                return {(omega, d): ONE}
        # (2) odd small left descent: absorbed with a factor q
        lds = u.left_descents()
        for m in lds:
            if m <= 2 * f - 1 and m % 2 == 1:
                return _dscale(self.reduce(f, s(m) * u), Q)
        # (3) window left descent: commute T_m out to the window factor
        for m in lds:
            if m >= 2 * f + 1:
                inner = self.reduce(f, s(m) * u)
                out: Dict[Tuple[Perm, Perm], Coeff] = {}
                for (omega, dd), c in inner.items():
                    sw = s(m) * omega
                    if sw.length() > omega.length():
                        _dadd(out, (sw, dd), c)
                    else:
                        _dadd(out, (sw, dd), c)
                        _dadd(out, (omega, dd), A * c)
                return out
        # (4) word starting T_{2j} T_{2j+1}: the pair-block relation gives the
        # length-preserving rewrite E^f T_{2j} T_{2j+1} X = E^f T_{2j} T_{2j-1} X
        for m in lds:
            if m <= 2 * f - 2 and m % 2 == 0:
                v1 = s(m) * u
                if m + 1 in v1.left_descents():
                    rest = s(m + 1) * v1
                    out = {}
                    for u2, c in self._hecke_word_times(
                        [(m, False), (m - 1, False)], rest
                    ).items():
                        for kd, c2 in self.reduce(f, u2).items():
                            _dadd(out, kd, c * c2)
                    return out
        # (5) last resort: graft a pair block,
        # E^f T_m X = E^f T_m T_{m+1} T_{m-1}^{-1} X
        for m in lds:
            if m <= 2 * f - 2 and m % 2 == 0:
                rest = s(m) * u
                out = {}
                for u2, c in self._hecke_word_times(
                    [(m, False), (m + 1, False), (m - 1, True)], rest
                ).items():
                    for kd, c2 in self.reduce(f, u2).items():
                        _dadd(out, kd, c * c2)
                return out
        raise StuckWordError(
            f"no rule applies to E^{f} T_{list(u.word())}", f, u
        )

    def _hecke_word_times(self, letters, rest: Perm) -> Dict[Perm, Coeff]:
        """Expand T_{letters} . T_rest in the Hecke algebra of S_n as a
        combination of T_u.  letters = [(i, inverse?)] applied left to right,
        multiplied from the right end onto T_rest's left."""
        terms: Dict[Perm, Coeff] = {rest: ONE}
        for i, invflag in reversed(letters):
            nxt: Dict[Perm, Coeff] = {}
            si = s(i)
            for w, c in terms.items():
                sw = si * w
                if sw.length() > w.length():
                    _dadd(nxt, sw, c)
                    if invflag:
                        _dadd(nxt, w, -A * c)
                else:
                    _dadd(nxt, sw, c)
                    if not invflag:
                        _dadd(nxt, w, A * c)
            terms = nxt
        return terms

    # -- sand: E^f T_v E_1 ---------------------------------------------------------

    def sand(self, f: int, v: Perm) -> AlgebraElt:
        """Normal form of E^f T_v E_1 (terms have d1 = identity)."""
        key = (f, v)
        hit = self._sand_memo.get(key)
        if hit is not None:
            return hit
        skey = ("sand",) + key
        if skey in self._inflight:
            raise StuckWordError(
                f"rewriting cycle at E^{f} T_{list(v.word())} E1", f, v
            )
        self._inflight.add(skey)
        try:
            out = self._sand_impl(f, v)
        finally:
            self._inflight.discard(skey)
        self._sand_memo[key] = out
        return out

    def _sand_impl(self, f, v) -> AlgebraElt:
        self._tick(f, v)
        n = self.n
        # contact cases first: they are specific short words that the
        # descent rules below would otherwise unfold indefinitely
        if f >= 1:
            if v.is_identity():
                # E^f E_1 = delta E^f
                return AlgebraElt(
                    n, {NormalWord(f, IDENTITY, IDENTITY, IDENTITY): DELTA}
                )
            if v == s(2):
                # E^f T_2 E_1 = z E^f
                return AlgebraElt(
                    n, {NormalWord(f, IDENTITY, IDENTITY, IDENTITY): Z}
                )
            if 2 * f + 2 <= n and v == seg(2 * f + 1, 1) * seg(2 * f + 2, 2):
                return self._merge_anchor(f)
            # E^f T_{v''} T_2 E_1 = z E^f T_{v''} when v'' moves only {3..n}
            # (commute v'' past the outer E_1 factors and contract T_2)
            vp = v * s(2)
            if vp.length() < v.length() and vp.supported_in(3, n):
                out = self.zero()
                for (omega, dd), c in self.reduce(f, vp).items():
                    out = out + AlgebraElt(
                        n, {NormalWord(f, IDENTITY, omega, dd): Z * c}
                    )
                return out
        # right descents: k = 1 absorbs into E_1, k >= 3 commutes past E_1
        rds = v.right_descents()
        for k in rds:
            if k == 1:
                return self.sand(f, v * s(1)).scale(Q)
            if k >= 3:
                inner = self.sand(f, v * s(k))
                return self.right_mul_gen(inner, T(k))
        # left descents: odd small absorbs, window commutes out, even grafts
        lds = v.left_descents()
        for m in lds:
            if m <= 2 * f - 1 and m % 2 == 1:
                return self.sand(f, s(m) * v).scale(Q)
        for m in lds:
            if m >= 2 * f + 1:
                inner = self.sand(f, s(m) * v)
                return self.left_mul_gen(T(m), inner)
        for m in lds:
            if m <= 2 * f - 2 and m % 2 == 0:
                v1 = s(m) * v
                if m + 1 in v1.left_descents():
                    rest = s(m + 1) * v1
                    out = self.zero()
                    for u2, c in self._hecke_word_times(
                        [(m, False), (m - 1, False)], rest
                    ).items():
                        out = out + self.sand(f, u2).scale(c)
                    return out
        for m in lds:
            if m <= 2 * f - 2 and m % 2 == 0:
                rest = s(m) * v
                out = self.zero()
                for u2, c in self._hecke_word_times(
                    [(m, False), (m + 1, False), (m - 1, True)], rest
                ).items():
                    out = out + self.sand(f, u2).scale(c)
                return out
        if f == 0:
            # T_v E_1 = sigma(E_1 T_{v^{-1}}); needs v^{-1} in D_{1,n}
            vi = v.inv()
            if vi in set(coset_reps_D(1, n)):
                return AlgebraElt(
                    n, {NormalWord(1, vi, IDENTITY, IDENTITY): ONE}
                )
        raise StuckWordError(
            f"no rule applies to E^{f} T_{list(v.word())} E1", f, v
        )

    def _merge_anchor(self, f) -> AlgebraElt:
        """E^f T_{v0} E_1 for v0 = s_{2f+1,1} s_{2f+2,2}, via the recursion
        E^(f+1) = E^f T_{1,2f+1}^{-1} T_{2f+2,2} E_1:

        expanding T_{1,2f+1}^{-1} = (T_{2f} - A)...(T_1 - A) turns the right
        side into the v0 term plus strictly shorter sandwich words, so the
        v0 term equals E^(f+1) minus those corrections."""
        n = self.n
        out = AlgebraElt(
            n, {NormalWord(f + 1, IDENTITY, IDENTITY, IDENTITY): ONE}
        )
        tail = seg(2 * f + 2, 2)  # word (2f+1, 2f, ..., 2)
        full = list(range(2 * f, 0, -1))  # letters of T_{2f+1,1}
        # iterate over proper subsets: keep[i] False means letter deleted
        for mask in range(1, 1 << len(full)):
            coeff = (-A) ** bin(mask).count("1")
            kept = [
                full[i] for i in range(len(full)) if not (mask >> i) & 1
            ]
            # expand T_kept . T_tail in the Hecke algebra
            expanded = self._hecke_word_times(
                [(i, False) for i in kept], tail
            )
            for u2, c in expanded.items():
                self._tick(f, u2)
                out = out - self.sand(f, u2).scale(coeff * c)
        return out

    # -- right multiplication by a generator ------------------------------------------

    def right_mul_gen(self, x: AlgebraElt, g) -> AlgebraElt:
        out = self.zero()
        for word, c in x.terms.items():
            out = out + self._rmul_word(word, g).scale(c)
        return out

    def _rmul_word(self, x: NormalWord, g) -> AlgebraElt:
        n = self.n
        f, d1, w, d2 = x
        if g[0] == "Tinv":
            return self._rmul_word(x, T(g[1])) - AlgebraElt(
                n, {x: ONE}
            ).scale(A)
        u = w * d2
        assert u.length() == w.length() + d2.length(), (x,)
        if g[0] == "T":
            i = g[1]
            if not (1 <= i <= n - 1):
                raise AlgebraError(f"generator T_{i} out of range for n={n}")
            out: Dict[NormalWord, Coeff] = {}
            us = u * s(i)
            pieces = [(us, ONE)]
            if us.length() < u.length():
                pieces.append((u, A))
            for u2, c in pieces:
                for (omega, dd), c2 in self.reduce(f, u2).items():
                    _wadd(out, NormalWord(f, d1, omega, dd), c * c2)
            r = AlgebraElt(n)
            r.terms = out
            return r
        # g == E1
        if n < 2:
            raise AlgebraError("E_1 requires n >= 2")
        # peel the right parabolic <s_1> x S_{3,n} off u: u = v . sig
        v = u
        sig_word: List[int] = []
        while True:
            ds = [k for k in v.right_descents() if k == 1 or k >= 3]
            if not ds:
                break
            k = ds[0]
            v = v * s(k)
            sig_word.append(k)
        sig_word.reverse()
        eps = sum(1 for k in sig_word if k == 1)
        win_word = [k for k in sig_word if k >= 3]
        # T_u E_1 = q^eps T_v E_1 T_{win}
        res = self.sand(f, v).scale(Q**eps)
        for k in win_word:
            res = self.right_mul_gen(res, T(k))
        if not d1.is_identity():
            res = self.left_mul_sigma_T(res, d1)
        return res

    # -- left multiplication via the anti-involution -----------------------------------

    def sigma(self, x: AlgebraElt) -> AlgebraElt:
        r = AlgebraElt(self.n)
        r.terms = {
            NormalWord(w.f, w.d2, w.w.inv(), w.d1): c
            for w, c in x.terms.items()
        }
        return r

    def left_mul_gen(self, g, x: AlgebraElt) -> AlgebraElt:
        """g . x with g a self-adjoint generator symbol (T_i, Tinv_i, E_1)."""
        return self.sigma(self.right_mul_gen(self.sigma(x), g))

    def left_mul_sigma_T(self, x: AlgebraElt, d: Perm) -> AlgebraElt:
        """sigma(T_d) . x computed as sigma(sigma(x) . T_d)."""
        y = self.sigma(x)
        for i in d.word():
            y = self.right_mul_gen(y, T(i))
        return self.sigma(y)

    # -- words and products ----------------------------------------------------------

    def word_letters(self, x: NormalWord) -> List[Tuple]:
        """Generator letters whose product is the basis word x."""
        letters: List[Tuple] = [T(i) for i in reversed(x.d1.word())]
        letters += e_power_letters(x.f)
        letters += [T(i) for i in x.w.word()]
        letters += [T(i) for i in x.d2.word()]
        return letters

    def apply_letters(self, x: AlgebraElt, letters: Iterable[Tuple]) -> AlgebraElt:
        for g in letters:
            x = self.right_mul_gen(x, g)
        return x

    def mul(self, a: AlgebraElt, b: AlgebraElt) -> AlgebraElt:
        a._check(b)
        out = self.zero()
        for word, c in b.terms.items():
            out = out + self.apply_letters(
                a.scale(c), self.word_letters(word)
            )
        return out


def _dadd(d, k, c):
    v = d.get(k, ZERO) + c
    if v:
        d[k] = v
    else:
        d.pop(k, None)


def _wadd(d, k, c):
    v = d.get(k, ZERO) + c
    if v:
        d[k] = v
    else:
        d.pop(k, None)


def _dscale(d, c):
    return {k: c * v for k, v in d.items()}


def e_power_letters(f: int) -> List[Tuple]:
    """Generator letters of E^f from E^(k+1) = E_1 T_{2,2k+2} T_{2k+1,1}^{-1} E^k."""
    letters: List[Tuple] = []
    for k in range(f - 1, 0, -1):
        chunk = [E1]
        chunk += [T(i) for i in seg_word(2, 2 * k + 2)]
        # T_{2k+1,1}^{-1}: reversed letters, inverted
        chunk += [Tinv(i) for i in reversed(seg_word(2 * k + 1, 1))]
        letters += chunk
    if f >= 1:
        letters += [E1]
    return letters


_engines: Dict[int, Engine] = {}


def get_engine(n: int) -> Engine:
    if n not in _engines:
        _engines[n] = Engine(n)
    return _engines[n]


# ---------------------------------------------------------------------------
# public constructors and operations
# ---------------------------------------------------------------------------


def one_elt(n: int) -> AlgebraElt:
    return get_engine(n).one()


def generator_elt(g, n: int) -> AlgebraElt:
    """T_i, Tinv_i or E_1 as a normal-form element."""
    eng = get_engine(n)
    if g == E1:
        if n < 2:
            raise AlgebraError("E_1 requires n >= 2")
        return AlgebraElt(n, {NormalWord(1, IDENTITY, IDENTITY, IDENTITY): ONE})
    kind, i = g
    if not (1 <= i <= n - 1):
        raise AlgebraError(f"generator index {i} out of range for n={n}")
    return eng.right_mul_gen(eng.one(), g)


def elt_from_letters(letters: Sequence[Tuple], n: int) -> AlgebraElt:
    return get_engine(n).apply_letters(one_elt(n), letters)


def mul(a: AlgebraElt, b: AlgebraElt) -> AlgebraElt:
    return get_engine(a.n).mul(a, b)


def right_mul_gen(x: AlgebraElt, g) -> AlgebraElt:
    return get_engine(x.n).right_mul_gen(x, g)


def sigma(x: AlgebraElt) -> AlgebraElt:
    return get_engine(x.n).sigma(x)


def e_power(k: int, n: int) -> AlgebraElt:
    if not (0 <= 2 * k <= n):
        raise AlgebraError(f"E^{k} requires n >= {2*k}")
    if k == 0:
        return one_elt(n)
    return AlgebraElt(n, {NormalWord(k, IDENTITY, IDENTITY, IDENTITY): ONE})


def e_index(l: int, n: int) -> AlgebraElt:
    """E_l = T_{l,1} T_{2,l+1}^{-1} E_1 T_{2,l+1} T_{l,1}^{-1}."""
    if not (1 <= l <= n - 1):
        raise AlgebraError(f"E_{l} out of range for n={n}")
    letters: List[Tuple] = [T(i) for i in seg_word(l, 1)]
    letters += [Tinv(i) for i in reversed(seg_word(2, l + 1))]
    letters += [E1]
    letters += [T(i) for i in seg_word(2, l + 1)]
    letters += [Tinv(i) for i in reversed(seg_word(l, 1))]
    return elt_from_letters(letters, n)


def tilde_e1(n: int) -> AlgebraElt:
    """The idempotent q z^{-1} T_1^{-1} T_2 E_1."""
    return elt_from_letters([Tinv(1), T(2), E1], n).scale(Q * ZINV)


def jm(i: int, n: int) -> AlgebraElt:
    """Jucys-Murphy element L_i = sum_{j<i} (j,i) - q^2 z^{-1} sum_{j<i} E_{j,i}."""
    if not (1 <= i <= n):
        raise AlgebraError(f"L_{i} out of range for n={n}")
    out = AlgebraElt(n)
    for j in range(1, i):
        # (j, i) = T_{j,i-1} T_{i-1} T_{i-1,j}
        tletters = (
            [T(k) for k in seg_word(j, i - 1)]
            + [T(i - 1)]
            + [T(k) for k in seg_word(i - 1, j)]
        )
        out = out + elt_from_letters(tletters, n)
        # E_{j,i} = T_{1,j}^{-1} T_{i,2} E_1 T_{2,i} T_{j,1}^{-1}
        eletters: List[Tuple] = [Tinv(k) for k in reversed(seg_word(1, j))]
        eletters += [T(k) for k in seg_word(i, 2)]
        eletters += [E1]
        eletters += [T(k) for k in seg_word(2, i)]
        eletters += [Tinv(k) for k in reversed(seg_word(j, 1))]
        out = out - elt_from_letters(eletters, n).scale(Q * Q * ZINV)
    return out


def jm_recursive(i: int, n: int) -> AlgebraElt:
    """L_i via L_k = T_{k-1} L_{k-1} T_{k-1} + T_{k-1} - q^2 z^{-1} E_{k-1,k}."""
    eng = get_engine(n)
    out = AlgebraElt(n)  # L_1 = 0
    for k in range(2, i + 1):
        out = eng.left_mul_gen(T(k - 1), eng.right_mul_gen(out, T(k - 1)))
        out = out + generator_elt(T(k - 1), n)
        eletters: List[Tuple] = [
            Tinv(m) for m in reversed(seg_word(1, k - 1))
        ]
        eletters += [T(m) for m in seg_word(k, 2)]
        eletters += [E1]
        eletters += [T(m) for m in seg_word(2, k)]
        eletters += [Tinv(m) for m in reversed(seg_word(k - 1, 1))]
        out = out - elt_from_letters(eletters, n).scale(Q * Q * ZINV)
    return out


def ideal_truncate(x: AlgebraElt, f: int) -> AlgebraElt:
    """Drop all words with deficiency >= f (image modulo that ideal)."""
    r = AlgebraElt(x.n)
    r.terms = {w: c for w, c in x.terms.items() if w.f < f}
    return r


def phi_embed(x: AlgebraElt, n: int) -> AlgebraElt:
    """Embedding of the rank n-2 algebra into tilde_E1 . B_n . tilde_E1:
    1 -> tilde_E1, T_i -> tilde_E1 T_{i+2}, E_1 -> tilde_E1 E_3."""
    if x.n != n - 2:
        raise AlgebraError(f"phi_embed expects rank {n-2}, got {x.n}")
    eng = get_engine(n)
    base = tilde_e1(n)
    out = eng.zero()
    e3 = e_index(3, n)
    for word, c in x.terms.items():
        acc = base.scale(c)
        for g in get_engine(x.n).word_letters(word):
            if g == E1:
                acc = eng.mul(acc, e3)
            elif g[0] == "T":
                acc = eng.right_mul_gen(acc, T(g[1] + 2))
            else:
                acc = eng.right_mul_gen(acc, Tinv(g[1] + 2))
        out = out + acc
    return out


def all_normal_words(n: int) -> List[NormalWord]:
    from itertools import permutations as iperm

    out = []
    for f in range(n // 2 + 1):
        D = coset_reps_D(f, n)
        lo = 2 * f + 1
        window_perms = [
            Perm(p, lo) for p in iperm(range(lo, n + 1))
        ] if lo <= n else [IDENTITY]
        for d1 in D:
            for w in window_perms:
                for d2 in D:
                    out.append(NormalWord(f, d1, w, d2))
    return out


# ---------------------------------------------------------------------------
# multiplication table with disk cache
# ---------------------------------------------------------------------------

_CACHE_VERSION = 1


def cache_dir() -> str:
    return os.environ.get(
        "QBRAUER_CACHE_DIR",
        os.path.join(os.path.expanduser("~"), ".cache", "qbrauer"),
    )


def _word_key(w: NormalWord) -> str:
    return json.dumps(
        {
            "f": w.f,
            "d1": list(w.d1.word()),
            "w": list(w.w.word()),
            "d2": list(w.d2.word()),
        },
        separators=(",", ":"),
    )


def _word_from_key(key: str) -> NormalWord:
    d = json.loads(key)
    return NormalWord(
        d["f"],
        perm_from_word(d["d1"]),
        perm_from_word(d["w"]),
        perm_from_word(d["d2"]),
    )


def _gen_key(g) -> str:
    return g[0] if g == E1 else f"{g[0]}{g[1]}"


def _gen_from_key(k: str):
    if k == "E":
        return E1
    if k.startswith("Tinv"):
        return Tinv(int(k[4:]))
    return T(int(k[1:]))


class MulTable:
    """Right action of each generator symbol on every normal word, for a
    fixed rank; built once, then immutable."""

    def __init__(self, n: int, action: Dict[Tuple[NormalWord, Tuple], AlgebraElt]):
        self.n = n
        self.action = action

    @staticmethod
    def gens(n: int) -> List[Tuple]:
        out: List[Tuple] = [T(i) for i in range(1, n)]
        out += [Tinv(i) for i in range(1, n)]
        if n >= 2:
            out.append(E1)
        return out

    @classmethod
    def build(cls, n: int) -> "MulTable":
        eng = get_engine(n)
        action = {}
        for w in all_normal_words(n):
            x = AlgebraElt(n, {w: ONE})
            for g in cls.gens(n):
                action[(w, g)] = eng.right_mul_gen(x, g)
        return cls(n, action)

    @classmethod
    def load_or_build(cls, n: int, directory: str = None) -> "MulTable":
        directory = directory or cache_dir()
        path = os.path.join(directory, f"multable-v{_CACHE_VERSION}-n{n}.json")
        if os.path.exists(path):
            try:
                with open(path) as fh:
                    data = json.load(fh)
                if data.get("version") == _CACHE_VERSION and data.get("n") == n:
                    action = {}
                    for wkey, per_gen in data["action"].items():
                        w = _word_from_key(wkey)
                        for gkey, terms in per_gen.items():
                            elt = AlgebraElt(
                                n,
                                {
                                    _word_from_key(tk): parse_coeff(tc)
                                    for tk, tc in terms
                                },
                            )
                            action[(w, _gen_from_key(gkey))] = elt
                    return cls(n, action)
            except (OSError, ValueError, KeyError) as exc:
                raise AlgebraError(
                    f"corrupt multiplication-table cache at {path}: {exc}"
                )
        table = cls.build(n)
        table.save(path)
        return table

    def save(self, path: str):
        os.makedirs(os.path.dirname(path), exist_ok=True)
        data = {"version": _CACHE_VERSION, "n": self.n, "action": {}}
        for (w, g), elt in self.action.items():
            per = data["action"].setdefault(_word_key(w), {})
            per[_gen_key(g)] = [
                [_word_key(tw), str(tc)] for tw, tc in elt.terms.items()
            ]
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(data, fh, sort_keys=True)
        os.replace(tmp, path)

    def right_mul_gen(self, x: AlgebraElt, g) -> AlgebraElt:
        out = AlgebraElt(x.n)
        for w, c in x.terms.items():
            out = out + self.action[(w, g)].scale(c)
        return out
