"""Finitely generated F2[x]-modules: T (x-primary) + T-perp (coprime to x) + free.

The torsion part is a finite F2-space, so every structural claim here can be
checked against the dense matrix of multiplication by x.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .poly2 import ONE, ZERO, X, Poly2, xgcd
from .snf import Matrix, as_matrix, diag, snf_with_inverse


@dataclass(frozen=True)
class FgModule:
    """free^r + sum F2[x]/(x^k) + sum F2[x]/(g) with g(0) = 1, deg g >= 1."""

    free_rank: int = 0
    x_orders: tuple[int, ...] = ()
    coprime_factors: tuple[Poly2, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(k < 1 for k in self.x_orders):
            raise ValueError("x-orders must be positive")
        for g in self.coprime_factors:
            if g.degree < 1 or g.constant_term != 1:
                raise ValueError(f"coprime factor {g} needs degree >= 1 and constant term 1")
        object.__setattr__(self, "x_orders", tuple(sorted(self.x_orders)))
        object.__setattr__(
            self, "coprime_factors", tuple(sorted(self.coprime_factors, key=lambda g: (g.degree, g.bits)))
        )

    @property
    def t_dim(self) -> int:
        return sum(self.x_orders)

    @property
    def tperp_dim(self) -> int:
        return sum(g.degree for g in self.coprime_factors)

    @property
    def torsion_dim(self) -> int:
        return self.t_dim + self.tperp_dim

    def is_zero(self) -> bool:
        return not (self.free_rank or self.x_orders or self.coprime_factors)

    def invariant_factors(self) -> tuple[Poly2, ...]:
        """Non-unit invariant factors, in divisibility order (zeros last)."""
        _, D, _, _ = snf_with_inverse(present(self))
        n = len(D)
        return tuple(D[i][i] for i in range(n) if not D[i][i].is_one())

    def isomorphic(self, other: FgModule) -> bool:
        return self.invariant_factors() == other.invariant_factors()

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"free^{self.free_rank}")
        parts.extend(f"F₂[x]/({X ** k})" for k in self.x_orders)
        parts.extend(f"F₂[x]/({g})" for g in self.coprime_factors)
        return " ⊕ ".join(parts) if parts else "0"


def present(M: FgModule) -> Matrix:
    """Square diagonal presentation; the module is the cokernel (relations are columns)."""
    return diag([X**k for k in M.x_orders] + list(M.coprime_factors) + [ZERO] * M.free_rank)


# ------------------------------------------------------------------ decompose


@dataclass(frozen=True)
class Summand:
    """One cyclic summand F2[x]/(f) of the cokernel, f = x^k * g (f = 0 when free)."""

    index: int
    factor: Poly2
    x_order: int
    coprime: Poly2
    # CRT idempotent data: a*x^k + b*g = 1
    a: Poly2 = ONE
    b: Poly2 = ZERO

    @property
    def is_free(self) -> bool:
        return not self.factor


@dataclass
class Decomposition:
    """A module together with the change of basis that exhibits its splitting.

    ``U`` maps old generator coordinates to new ones (``w = U v``);
    columns of ``Uinv`` are the new generators in old coordinates.
    """

    module: FgModule
    U: Matrix
    D: Matrix
    V: Matrix
    Uinv: Matrix
    summands: list[Summand] = field(default_factory=list)

    def project(self, v) -> dict:
        """Components of an element (old coordinates) in T, T-perp and F.

        Returns ``{"T": [...], "Tperp": [...], "F": [...]}`` listing
        (summand index, residue) pairs; T residues are mod x^k, T-perp mod g.
        """
        v = [e if isinstance(e, Poly2) else Poly2(int(e)) for e in v]
        w = [ZERO] * len(self.U)
        for i, row in enumerate(self.U):
            acc = ZERO
            for a, e in zip(row, v):
                if a and e:
                    acc = acc + a * e
            w[i] = acc
        out = {"T": [], "Tperp": [], "F": []}
        for s in self.summands:
            c = w[s.index]
            if s.is_free:
                out["F"].append((s.index, c))
                continue
            if s.x_order:
                out["T"].append((s.index, c % X**s.x_order))
            if s.coprime.degree >= 1:
                out["Tperp"].append((s.index, c % s.coprime))
        return out

    def include(self, t=(), tperp=(), free=()) -> list[Poly2]:
        """Old-coordinate vector of the element with the given summand components."""
        w = [ZERO] * len(self.U)
        by_index = {s.index: s for s in self.summands}
        for idx, r in t:
            s = by_index[idx]
            # r * b * g is r mod x^k and 0 mod g
            w[idx] = (w[idx] + r * s.b * s.coprime) % s.factor
        for idx, r in tperp:
            s = by_index[idx]
            w[idx] = (w[idx] + r * s.a * X**s.x_order) % s.factor
        for idx, r in free:
            w[idx] = w[idx] + r
        return [_dot(row, w) for row in self.Uinv]


def _dot(row, vec) -> Poly2:
    acc = ZERO
    for a, e in zip(row, vec):
        if a and e:
            acc = acc + a * e
    return acc


def decompose(presentation) -> Decomposition:
    """Split coker(presentation) as T + T-perp + F via Smith normal form."""
    A = as_matrix(presentation)
    U, D, V, Uinv = snf_with_inverse(A)
    m = len(A)
    n = len(A[0]) if A else 0
    summands = []
    x_orders, coprimes, free = [], [], 0
    for i in range(m):
        f = D[i][i] if i < n else ZERO
        if f.is_one():
            continue
        if not f:
            free += 1
            summands.append(Summand(i, ZERO, 0, ZERO))
            continue
        k, g = f.split_at_zero()
        _, a, b = xgcd(X**k, g)
        summands.append(Summand(i, f, k, g, a, b))
        if k:
            x_orders.append(k)
        if g.degree >= 1:
            coprimes.append(g)
    mod = FgModule(free, tuple(x_orders), tuple(coprimes))
    return Decomposition(mod, U, D, V, Uinv, summands)


# ----------------------------------------------------------------- x-action


@dataclass(frozen=True)
class TorsionBasis:
    """Block layout of the standard F2-basis of T + T-perp.

    Block i of T has basis g_i, x g_i, ..., x^{k_i - 1} g_i; block j of T-perp
    has basis 1, x, ..., x^{d_j - 1}.
    """

    t_offsets: tuple[int, ...]
    t_orders: tuple[int, ...]
    tperp_offsets: tuple[int, ...]
    dim: int

    @property
    def t_dim(self) -> int:
        return sum(self.t_orders)


def torsion_basis(M: FgModule) -> TorsionBasis:
    off, t_off = 0, []
    for k in M.x_orders:
        t_off.append(off)
        off += k
    p_off = []
    for g in M.coprime_factors:
        p_off.append(off)
        off += g.degree
    return TorsionBasis(tuple(t_off), M.x_orders, tuple(p_off), off)


def x_action_matrix(M: FgModule) -> np.ndarray:
    """Dense F2 matrix (uint8) of multiplication by x on T + T-perp; column j = x * e_j."""
    B = torsion_basis(M)
    X_ = np.zeros((B.dim, B.dim), dtype=np.uint8)
    for off, k in zip(B.t_offsets, B.t_orders):
        for j in range(k - 1):
            X_[off + j + 1, off + j] = 1
    for off, g in zip(B.tperp_offsets, M.coprime_factors):
        d = g.degree
        for j in range(d - 1):
            X_[off + j + 1, off + j] = 1
        # x * x^{d-1} = x^d = g - x^d (the lower coefficients of g)
        for i, c in enumerate(g.coeffs[:d]):
            X_[off + i, off + d - 1] = c
    return X_


def gf2_rank_dense(A: np.ndarray) -> int:
    """Rank over F2 of a dense 0/1 matrix of any size."""
    W = (np.asarray(A, dtype=np.uint8) & 1).copy()
    rows, cols = W.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = np.flatnonzero(W[r:, c])
        if piv.size == 0:
            continue
        p = r + piv[0]
        if p != r:
            W[[r, p]] = W[[p, r]]
        hit = np.flatnonzero(W[:, c])
        hit = hit[hit != r]
        W[hit] ^= W[r]
        r += 1
    return r


# ------------------------------------------------------------ filtered V and psi


@dataclass(frozen=True)
class FilteredSpace:
    """Finite filtration F_0 <= F_1 <= ... of an F2-space with an adapted basis.

    ``profile[r]`` is dim F_r for r = 0 .. top; ``basis_levels`` lists the level
    of each distinguished basis vector (nondecreasing), and ``basis`` gives the
    vectors in ambient coordinates (rows of a 0/1 array).
    """

    total: int
    profile: tuple[int, ...]
    basis_levels: tuple[int, ...]
    basis: np.ndarray

    def __post_init__(self):
        if any(b < a for a, b in zip(self.profile, self.profile[1:])):
            raise ValueError("filtration profile must be nondecreasing")
        if self.profile and self.profile[-1] != self.total:
            raise ValueError("filtration must be exhaustive")
        if not self.profile and self.total:
            raise ValueError("filtration must be exhaustive")

    def dim_at(self, r: int) -> int:
        if r < 0:
            return 0
        if not self.profile:
            return self.total
        return self.profile[min(r, len(self.profile) - 1)]

    def gr_dims(self) -> dict[int, int]:
        out = {}
        for r in range(len(self.profile)):
            d = self.dim_at(r) - self.dim_at(r - 1)
            if d:
                out[r] = d
        return out


def v_space(M: FgModule) -> FilteredSpace:
    """V = T / xT filtered by F_r = classes with a lift killed by x^r.

    The generator class of a summand F2[x]/(x^k) sits at level exactly k, so
    dim F_r = #{orders <= r}.  Basis vectors are the classes of the g_i.
    """
    B = torsion_basis(M)
    orders = list(M.x_orders)
    top = max(orders, default=0)
    profile = tuple(sum(1 for k in orders if k <= r) for r in range(top + 1)) if orders else ()
    basis = np.zeros((len(orders), B.dim), dtype=np.uint8)
    for i, off in enumerate(B.t_offsets):
        basis[i, off] = 1
    return FilteredSpace(len(orders), profile, tuple(orders), basis)


def _mat_vec(A: np.ndarray, v: np.ndarray) -> np.ndarray:
    return (A.astype(np.int64) @ v.astype(np.int64) % 2).astype(np.uint8)


def x_order(Xm: np.ndarray, v: np.ndarray, cap: int | None = None) -> int | None:
    """Least r with x^r v = 0, or None if x^r v never vanishes (within dim steps)."""
    cap = Xm.shape[0] if cap is None else cap
    w = np.asarray(v, dtype=np.uint8) & 1
    for r in range(cap + 1):
        if not w.any():
            return r
        w = _mat_vec(Xm, w)
    return None


@dataclass(frozen=True)
class PsiIso:
    """psi: gr V -> ker(x | M), [v] at level d -> x^{d-1} * (lift of order d).

    ``matrix`` has one column per basis vector of gr V, in torsion-basis
    coordinates; ``kernel_dim`` is computed independently as n - rank(x).
    """

    domain_levels: tuple[int, ...]
    matrix: np.ndarray
    kernel_dim: int
    rank: int

    @property
    def bijective(self) -> bool:
        return self.rank == len(self.domain_levels) == self.kernel_dim


def _psi_image(Xm, lift, d):
    if x_order(Xm, lift) != d:
        raise AssertionError(f"lift does not have x-order {d}")
    w = np.asarray(lift, dtype=np.uint8) & 1
    for _ in range(d - 1):
        w = _mat_vec(Xm, w)
    return w


def psi_apply(M: FgModule, lift: np.ndarray) -> np.ndarray:
    """psi on a single lift: x^{d-1} * lift where d is its x-order (d >= 1)."""
    Xm = x_action_matrix(M)
    d = x_order(Xm, lift)
    if d is None or d < 1:
        raise ValueError("psi needs a nonzero element of T")
    return _psi_image(Xm, lift, d)


def psi_iso(M: FgModule) -> PsiIso:
    """Build psi on the adapted basis of gr V and verify bijectivity by rank."""
    Xm = x_action_matrix(M)
    V = v_space(M)
    n = Xm.shape[0]
    cols = [_psi_image(Xm, V.basis[i], d) for i, d in enumerate(V.basis_levels)]
    P = np.stack(cols, axis=1) if cols else np.zeros((n, 0), dtype=np.uint8)
    if P.size and (Xm.astype(np.int64) @ P.astype(np.int64) % 2).any():
        raise AssertionError("psi image escapes ker(x)")
    kdim = n - gf2_rank_dense(Xm)
    rk = gf2_rank_dense(P) if P.size else 0
    iso = PsiIso(V.basis_levels, P, kdim, rk)
    if not iso.bijective:
        raise AssertionError(f"psi is not bijective: rank {rk}, dim gr V {len(cols)}, dim ker x {kdim}")
    return iso


@dataclass(frozen=True)
class SESDims:
    """Dimensions in 0 -> coker(x) -> middle -> ker(x) -> 0."""

    coker: int
    ker: int

    @property
    def total(self) -> int:
        return self.coker + self.ker

    def __int__(self) -> int:
        return self.total


def ses_dims(M: FgModule) -> SESDims:
    """coker(x) has dimension free_rank + #x_orders, ker(x) has #x_orders."""
    return SESDims(M.free_rank + len(M.x_orders), len(M.x_orders))
