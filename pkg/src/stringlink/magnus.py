"""
Truncated Magnus expansion and Milnor invariants of string links.

The Magnus map sends the base meridian of strand j to 1 + X_j in the ring of
noncommutative power series in X_1..X_m, truncated above degree q. Arc
generators are rewritten as conjugates of base meridians by iterating the
Wirtinger relations q times (after t rounds an arc is correct modulo the
(t+1)-st lower central series term), and the longitude of strand k is then
expanded. mu(i_1 ... i_{r} k) is the coefficient of X_{i_1} ... X_{i_r} in
that expansion.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .diagram import DiagramError, StringLinkDiagram
from .wirtinger import FreeWord, WirtingerPresentation, presentation

DEFAULT_DEGREE = 5

# Above this bound on |coefficient| a product could overflow int64; such
# products are carried out with Python integers instead.
_INT64_SAFE = 2 ** 62


class TruncatedSeries:
    """Integer noncommutative polynomial in X_1..X_m, truncated above degree q.

    Coefficients of degree d are held in a flat array of length m**d indexed
    by the word read as a base-m number (first letter most significant).
    Words in the public API are tuples of 1-based variable indices.
    """

    __slots__ = ("m", "q", "blocks", "_l1", "_nonzero")

    def __init__(self, m: int, q: int, blocks: Sequence[np.ndarray] | None = None):
        if q < 0 or m < 1:
            raise ValueError(f"need m >= 1 and q >= 0, got m={m}, q={q}")
        self.m = m
        self.q = q
        if blocks is None:
            blocks = [np.zeros(m ** d, dtype=np.int64) for d in range(q + 1)]
        self.blocks = list(blocks)
        self._l1 = None
        self._nonzero = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, m: int, q: int, c: int = 1) -> TruncatedSeries:
        s = cls(m, q)
        s.blocks[0][0] = c
        return s

    @classmethod
    def one(cls, m: int, q: int) -> TruncatedSeries:
        return cls.constant(m, q, 1)

    @classmethod
    def generator(cls, m: int, q: int, j: int) -> TruncatedSeries:
        """1 + X_j, the image of the j-th meridian."""
        return cls.from_terms(m, q, {(): 1, (j,): 1})

    @classmethod
    def generator_inverse(cls, m: int, q: int, j: int) -> TruncatedSeries:
        """1 - X_j + X_j^2 - ..."""
        return cls.from_terms(m, q, {(j,) * d: (-1) ** d for d in range(q + 1)})

    @classmethod
    def from_terms(cls, m: int, q: int, terms: Mapping[tuple[int, ...], int]) -> TruncatedSeries:
        s = cls(m, q)
        for word, c in terms.items():
            if len(word) <= q and c:
                s.blocks[len(word)][s._index(word)] += c
        return s

    # -- access -----------------------------------------------------------

    def _index(self, word: Sequence[int]) -> int:
        idx = 0
        for letter in word:
            if not 1 <= letter <= self.m:
                raise IndexError(f"variable X_{letter} out of range 1..{self.m}")
            idx = idx * self.m + (letter - 1)
        return idx

    def coefficient(self, word: Sequence[int]) -> int:
        word = tuple(word)
        if len(word) > self.q:
            raise ValueError(f"degree {len(word)} exceeds truncation degree {self.q}")
        return int(self.blocks[len(word)][self._index(word)])

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        out = {}
        for d, block in enumerate(self.blocks):
            for idx in np.flatnonzero(block):
                word = []
                x = int(idx)
                for _ in range(d):
                    x, r = divmod(x, self.m)
                    word.append(r + 1)
                out[tuple(reversed(word))] = int(block[idx])
        return out

    def degree_part(self, d: int) -> dict[tuple[int, ...], int]:
        return {w: c for w, c in self.terms.items() if len(w) == d}

    def _l1_norm(self) -> int:
        if self._l1 is None:
            self._l1 = sum(int(np.abs(b).sum()) if b.dtype != object else sum(abs(int(x)) for x in b) for b in self.blocks)
        return self._l1

    def _nonzero_degrees(self) -> list[int]:
        if self._nonzero is None:
            self._nonzero = [d for d, b in enumerate(self.blocks) if b.any()]
        return self._nonzero

    # -- arithmetic -------------------------------------------------------

    def _compatible(self, other: TruncatedSeries) -> int:
        if self.m != other.m:
            raise ValueError(f"variable count mismatch: {self.m} vs {other.m}")
        return min(self.q, other.q)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        q = self._compatible(other)
        return TruncatedSeries(self.m, q, [self.blocks[d] + other.blocks[d] for d in range(q + 1)])

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        q = self._compatible(other)
        return TruncatedSeries(self.m, q, [self.blocks[d] - other.blocks[d] for d in range(q + 1)])

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(self.m, self.q, [-b for b in self.blocks])

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        q = self._compatible(other)
        wide = self._l1_norm() * other._l1_norm() >= _INT64_SAFE
        dtype = object if wide else np.int64
        out = [np.zeros(self.m ** d, dtype=dtype) for d in range(q + 1)]
        right = other._nonzero_degrees()
        for i in self._nonzero_degrees():
            if i > q:
                break
            a = self.blocks[i].astype(dtype) if wide else self.blocks[i]
            for j in right:
                if i + j > q:
                    break
                b = other.blocks[j].astype(dtype) if wide else other.blocks[j]
                out[i + j] += (a[:, None] * b).reshape(-1)
        return TruncatedSeries(self.m, q, out)

    def times_generator(self, j: int, left: bool = False) -> TruncatedSeries:
        """self * X_j (or X_j * self when ``left``)."""
        m = self.m
        out = [np.zeros(1, dtype=self.blocks[0].dtype)]
        for d in range(self.q):
            block = np.zeros(m ** (d + 1), dtype=self.blocks[d].dtype)
            if left:
                block[(j - 1) * m ** d:j * m ** d] = self.blocks[d]
            else:
                block[j - 1::m] = self.blocks[d]
            out.append(block)
        return TruncatedSeries(m, self.q, out)

    def inverse(self) -> TruncatedSeries:
        """Multiplicative inverse; the constant term must be +1 or -1."""
        c = int(self.blocks[0][0])
        if c not in (1, -1):
            raise ValueError(f"series with constant term {c} is not invertible over the integers")
        unit = TruncatedSeries.constant(self.m, self.q, c)
        nil = unit * self - TruncatedSeries.one(self.m, self.q)  # c*self = 1 + nil
        acc = TruncatedSeries.one(self.m, self.q)
        power = TruncatedSeries.one(self.m, self.q)
        for _ in range(self.q):
            power = power * -nil
            acc = acc + power
        return acc * unit

    def truncate(self, q: int) -> TruncatedSeries:
        if q > self.q:
            raise ValueError(f"cannot raise truncation degree from {self.q} to {q}")
        return TruncatedSeries(self.m, q, self.blocks[:q + 1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.m, self.q) == (other.m, other.q) and all(
            np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks)
        )

    __hash__ = None

    def __repr__(self) -> str:
        parts = []
        for word, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            mono = "".join(f"X{v}" for v in word) or "1"
            if word and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}" + (f"*{mono}" if word else "")
            parts.append(("- " if c < 0 else "+ ") + body)
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _conjugate_meridian(v: TruncatedSeries, j: int, vinv: TruncatedSeries, power: int) -> TruncatedSeries:
    """v * (1 + X_j)^power * vinv for power = +1 or -1."""
    if power > 0:
        middle = v + v.times_generator(j)
    else:
        middle = v
        term = v
        for d in range(1, v.q + 1):
            term = term.times_generator(j)
            middle = middle + term if d % 2 == 0 else middle - term
    return middle * vinv


def expand(word: FreeWord, assignment: Mapping[int, TruncatedSeries], q: int) -> TruncatedSeries:
    """Magnus image of ``word`` given the image of each generator."""
    missing = {g for g, _ in word.letters} - set(assignment)
    if missing:
        raise KeyError(f"no series assigned to generators {sorted(missing)}")
    if not assignment:
        raise ValueError("assignment is empty; cannot infer the number of variables")
    m = next(iter(assignment.values())).m
    inverses: dict[int, TruncatedSeries] = {}
    acc = TruncatedSeries.one(m, q)
    for g, e in word.letters:
        s = assignment[g]
        if e < 0:
            if g not in inverses:
                inverses[g] = s.inverse()
            s = inverses[g]
        acc = acc * s
    return acc.truncate(q) if acc.q > q else acc


def _images(p: WirtingerPresentation, q: int):
    m = p.num_strands
    one = TruncatedSeries.one(m, q)
    mer = [TruncatedSeries.generator(m, q, j + 1) for j in range(m)]
    mer_inv = [TruncatedSeries.generator_inverse(m, q, j + 1) for j in range(m)]

    def along(s: int, images, conjugates: bool):
        # v is the product of the underpass letters so far, latest on the left
        v, vinv = one, one
        new = [(mer[s], mer_inv[s])]
        for over, sign in p.underpasses[s]:
            img, img_inv = images[over.id]
            if sign > 0:
                v, vinv = img * v, vinv * img_inv
            else:
                v, vinv = img_inv * v, vinv * img
            if conjugates:
                new.append((_conjugate_meridian(v, s + 1, vinv, 1), _conjugate_meridian(v, s + 1, vinv, -1)))
        return v, new

    cur = [(mer[g.strand - 1], mer_inv[g.strand - 1]) for g in p.generators]
    for _ in range(q):
        nxt = []
        for s in range(m):
            nxt.extend(along(s, cur, True)[1])
        cur = nxt
    return cur, along, mer, mer_inv, one


def generator_images(p: WirtingerPresentation, q: int) -> dict[int, TruncatedSeries]:
    """Magnus image of every arc generator after q rounds of rewriting."""
    cur = _images(p, q)[0]
    return {g.id: cur[g.id][0] for g in p.generators}


def _rewrite(p: WirtingerPresentation, q: int) -> tuple[TruncatedSeries, ...]:
    """Magnus images of all longitudes after q rounds of rewriting."""
    cur, along, mer, mer_inv, one = _images(p, q)
    out = []
    for s in range(p.num_strands):
        v, _ = along(s, cur, False)
        w = p.writhes[s]
        corr = one
        for _ in range(abs(w)):
            corr = corr * (mer_inv[s] if w > 0 else mer[s])
        out.append(corr * v)
    return tuple(out)


def chen_milnor_longitude(p: WirtingerPresentation, i: int, q: int) -> TruncatedSeries:
    """Magnus expansion of the zero-framed longitude of strand ``i`` (1-based).

    Coefficients of degree < q are exact.
    """
    if q < 2:
        raise ValueError(f"truncation degree must be at least 2, got {q}")
    if not 1 <= i <= p.num_strands:
        raise DiagramError(f"strand index {i} out of range 1..{p.num_strands}")
    return _rewrite(p, q)[i - 1]


@functools.lru_cache(maxsize=2048)
def longitude_series(d: StringLinkDiagram, q: int = DEFAULT_DEGREE) -> tuple[TruncatedSeries, ...]:
    if q < 2:
        raise ValueError(f"truncation degree must be at least 2, got {q}")
    return _rewrite(presentation(d), q)


class UnsupportedIndex(ValueError):
    pass


def check_index(index: Sequence[int], m: int) -> tuple[int, ...]:
    """Validate a multi-index: ij (i != j), ijk distinct, or iijj (i != j)."""
    index = tuple(int(i) for i in index)
    if any(not 1 <= i <= m for i in index):
        raise DiagramError(f"index {''.join(map(str, index))} has entries outside 1..{m}")
    k = len(index)
    ok = (
        (k == 2 and index[0] != index[1])
        or (k == 3 and len(set(index)) == 3)
        or (k == 4 and index[0] == index[1] and index[2] == index[3] and index[0] != index[2])
    )
    if not ok:
        raise UnsupportedIndex(
            f"index {''.join(map(str, index))} unsupported: use ij, ijk with distinct entries, or iijj"
        )
    return index


def milnor(d: StringLinkDiagram, index: Sequence[int], q: int | None = None) -> int:
    """mu-bar invariant of a string link: the coefficient of
    X_{i_1}..X_{i_{k-1}} in the longitude of strand i_k."""
    index = check_index(index, d.num_strands)
    q = DEFAULT_DEGREE if q is None else q
    if q < len(index):
        raise ValueError(f"truncation degree {q} too small for an index of length {len(index)}")
    return longitude_series(d, q)[index[-1] - 1].coefficient(index[:-1])


def _fmt_index(index: Sequence[int]) -> str:
    return ("" if max(index) < 10 else ",").join(map(str, index))


@dataclass(frozen=True)
class MilnorReport:
    num_strands: int
    values: tuple[tuple[tuple[int, ...], int], ...]

    def __getitem__(self, index) -> int:
        if isinstance(index, str):
            index = tuple(int(c) for c in index)
        return dict(self.values)[tuple(index)]

    def as_dict(self) -> dict[str, int]:
        return {_fmt_index(i): v for i, v in self.values}

    def to_text(self) -> str:
        return "".join(f"mu {_fmt_index(i)} = {v}\n" for i, v in self.values)

    def nonzero(self) -> dict[str, int]:
        return {k: v for k, v in self.as_dict().items() if v}


def report_indices(m: int) -> list[tuple[int, ...]]:
    rng = range(1, m + 1)
    idx = [(i, j) for i in rng for j in rng if i != j]
    idx += list(itertools.permutations(rng, 3))
    idx += [(i, i, j, j) for i in rng for j in rng if i != j]
    return sorted(idx, key=lambda t: (len(t), t))


def report(d: StringLinkDiagram, q: int = DEFAULT_DEGREE) -> MilnorReport:
    """All lengths-2 indices, distinct length-3 indices and Sato-Levine
    indices iijj."""
    return MilnorReport(d.num_strands, tuple((i, milnor(d, i, q)) for i in report_indices(d.num_strands)))
