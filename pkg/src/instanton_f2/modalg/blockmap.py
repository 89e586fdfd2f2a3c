"""Upper block-triangular maps on V + gr Z + gr V and what their ranks force."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InfeasibleGeometryError
from .module import gf2_rank_dense

BLOCK_NAMES = ("f11", "f12", "f13", "grEps", "f23", "grF11")
# (row block, column block) of each named entry
_POS = {"f11": (0, 0), "f12": (0, 1), "f13": (0, 2), "grEps": (1, 1), "f23": (1, 2), "grF11": (2, 2)}


def _as01(a, rows: int, cols: int, name: str) -> np.ndarray:
    a = np.zeros((rows, cols), dtype=np.uint8) if a is None else np.asarray(a, dtype=np.uint8) & 1
    if a.shape != (rows, cols):
        raise ValueError(f"block {name} has shape {a.shape}, expected {(rows, cols)}")
    return a


def _injective(A: np.ndarray) -> bool:
    return gf2_rank_dense(A) == A.shape[1] if A.shape[1] else True


def _surjective(A: np.ndarray) -> bool:
    return gf2_rank_dense(A) == A.shape[0] if A.shape[0] else True


def graded_part(f: np.ndarray, src_levels, tgt_levels, shift: int = 0) -> np.ndarray:
    """Associated graded of a filtered map in adapted bases.

    Column j (level l) may only hit target rows of level <= l + shift; the
    graded map keeps exactly the entries at level l + shift.
    """
    f = np.asarray(f, dtype=np.uint8) & 1
    src, tgt = np.asarray(src_levels), np.asarray(tgt_levels)
    if f.shape != (len(tgt), len(src)):
        raise ValueError("filtered map shape does not match the level lists")
    over = tgt[:, None] > src[None, :] + shift
    if (f & over).any():
        raise ValueError(f"map is not filtered of level {shift} for the given filtrations")
    return f * (tgt[:, None] == src[None, :] + shift)


@dataclass(frozen=True)
class BlockTriangularMap:
    """A 3x3 block matrix over F2 with zero strictly-lower blocks.

    ``source`` and ``target`` are the block dimensions (V, gr Z, gr V) on each side.
    When ``levels`` is set, grF11 is the associated graded of f11 for the
    filtrations with those basis levels.
    """

    source: tuple[int, int, int]
    target: tuple[int, int, int]
    blocks: dict
    levels: tuple[tuple[int, ...], tuple[int, ...], int] | None = None

    @classmethod
    def from_blocks(cls, source, target, **blocks) -> BlockTriangularMap:
        unknown = set(blocks) - set(BLOCK_NAMES)
        if unknown:
            raise ValueError(f"unknown blocks {sorted(unknown)}")
        out = {}
        for name, (r, c) in _POS.items():
            out[name] = _as01(blocks.get(name), target[r], source[c], name)
        return cls(tuple(source), tuple(target), out)

    @classmethod
    def filtered(
        cls, f11, src_levels, tgt_levels, *, shift: int = 0, gr_z=(0, 0), **blocks
    ) -> BlockTriangularMap:
        """Block map whose grF11 is computed as gr f11 for the given V filtrations."""
        if "grF11" in blocks:
            raise ValueError("grF11 is determined by f11 and the filtrations")
        a, b = len(src_levels), len(tgt_levels)
        src = (a, gr_z[0], a)
        tgt = (b, gr_z[1], b)
        m = cls.from_blocks(src, tgt, f11=f11, grF11=graded_part(f11, src_levels, tgt_levels, shift), **blocks)
        return cls(m.source, m.target, m.blocks, (tuple(src_levels), tuple(tgt_levels), shift))

    @classmethod
    def from_matrix(cls, A, source, target) -> BlockTriangularMap:
        """Split a full matrix; raises if a strictly-lower block is nonzero."""
        A = np.asarray(A, dtype=np.uint8) & 1
        rs = np.cumsum((0,) + tuple(target))
        cs = np.cumsum((0,) + tuple(source))
        if A.shape != (rs[-1], cs[-1]):
            raise ValueError(f"matrix shape {A.shape} does not match block profile")
        for r in range(3):
            for c in range(r):
                if A[rs[r] : rs[r + 1], cs[c] : cs[c + 1]].any():
                    raise ValueError("strictly lower blocks must vanish")
        blocks = {n: A[rs[r] : rs[r + 1], cs[c] : cs[c + 1]].copy() for n, (r, c) in _POS.items()}
        return cls(tuple(source), tuple(target), blocks)

    def matrix(self) -> np.ndarray:
        rs = np.cumsum((0,) + self.target)
        cs = np.cumsum((0,) + self.source)
        A = np.zeros((rs[-1], cs[-1]), dtype=np.uint8)
        for n, (r, c) in _POS.items():
            A[rs[r] : rs[r + 1], cs[c] : cs[c + 1]] = self.blocks[n]
        return A

    def upper_left(self) -> np.ndarray:
        b = self.blocks
        return np.block([[b["f11"], b["f12"]], [np.zeros((self.target[1], self.source[0]), np.uint8), b["grEps"]]])

    def lower_right(self) -> np.ndarray:
        b = self.blocks
        return np.block([[b["grEps"], b["f23"]], [np.zeros((self.target[2], self.source[1]), np.uint8), b["grF11"]]])


@dataclass(frozen=True)
class Fact:
    """An implication checked by rank: ``premise => conclusion``."""

    name: str
    premise: bool
    conclusion: bool

    @property
    def fired(self) -> bool:
        return self.premise

    @property
    def holds(self) -> bool:
        return not self.premise or self.conclusion


@dataclass(frozen=True)
class BlockFacts:
    injective: bool
    surjective: bool
    facts: tuple[Fact, ...]

    @property
    def all_hold(self) -> bool:
        return all(f.holds for f in self.facts)

    def fired(self) -> list[Fact]:
        return [f for f in self.facts if f.fired]


def block_map_facts(f: BlockTriangularMap) -> BlockFacts:
    """Injectivity/surjectivity consequences of the triangular shape, each checked by rank.

    The last fact (gr f11 onto => f11 onto) is only reported for maps built
    with :meth:`BlockTriangularMap.filtered`, where grF11 really is gr f11.
    """
    A = f.matrix()
    inj, surj = _injective(A), _surjective(A)
    b = f.blocks
    facts = [
        Fact("injective => f11 injective", inj, _injective(b["f11"])),
        Fact("injective => upper-left 2x2 injective", inj, _injective(f.upper_left())),
        Fact("surjective => grF11 surjective", surj, _surjective(b["grF11"])),
        Fact("surjective => lower-right 2x2 surjective", surj, _surjective(f.lower_right())),
    ]
    if f.levels is not None:
        facts.append(Fact("grF11 surjective => f11 surjective", _surjective(b["grF11"]), _surjective(b["f11"])))
    return BlockFacts(inj, surj, tuple(facts))


def gr_eps_from_q3(q3_source: int, q3_target: int, b_plus: int) -> int:
    """gr eps_0 of a cobordism with eps_0 = 1 between F2-homology spheres.

    1 when q3 drops by exactly b+, 0 when it drops by less; a larger drop is
    impossible and raises :class:`InfeasibleGeometryError`.
    """
    if b_plus < 0:
        raise ValueError("b+ must be nonnegative")
    floor = q3_source - b_plus
    if q3_target < floor:
        raise InfeasibleGeometryError(
            f"q3 cannot drop by more than b+: q3(Y') = {q3_target} < q3(Y) - b+ = {floor}"
        )
    return 1 if q3_target == floor else 0
