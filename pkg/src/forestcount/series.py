"""Exact truncated bivariate power series over arbitrary-precision integers.

A BiSeries holds the coefficients of a formal series in two variables
(x marking codimension, y marking degree) restricted to the box
0 <= c <= cmax, 0 <= d <= dmax.  All arithmetic truncates to the box.
Every series in this package has nonnegative exponents only, so each
retained coefficient of a sum or product is exact: discarded terms can
never flow back into the box.

Coefficients are plain Python ints (the native arbitrary-precision
integer), so there is no rounding and no overflow at any magnitude.
Instances are immutable after construction and safe to share across
threads; all operations are pure functions.

Products are computed through a packed representation: each d-row is
encoded into one big integer with fixed-width slots along c, turning a
whole row convolution into a single int multiplication.  That keeps the
dominant cost inside CPython's big-int multiply rather than Python-level
loops, which is what makes the large verification boxes affordable.  A
plain nested-loop product (`mul_reference`) is kept alongside and is
cross-checked against the packed product by the test suite.
"""

from __future__ import annotations

from typing import Iterator


class BoxMismatchError(ValueError):
    """Two series with different truncation boxes were combined."""


def _absmax(rows: tuple[tuple[int, ...], ...]) -> tuple[int, bool]:
    """Largest |coefficient| and whether any coefficient is negative."""
    biggest = 0
    negative = False
    for row in rows:
        for v in row:
            if v < 0:
                negative = True
                v = -v
            if v > biggest:
                biggest = v
    return biggest, negative


def _split_pack(row: tuple[int, ...], bps: int) -> tuple[int, int]:
    """Pack a row into (positive-part, negative-part) slot integers.

    Slot c occupies bytes [c*bps, (c+1)*bps) little-endian; callers size
    bps so that any slot of any product/accumulation stays below 2**(8*bps).
    """
    pos = bytearray(len(row) * bps)
    neg = None
    for c, v in enumerate(row):
        if v > 0:
            nb = (v.bit_length() + 7) // 8
            off = c * bps
            pos[off:off + nb] = v.to_bytes(nb, "little")
        elif v < 0:
            if neg is None:
                neg = bytearray(len(row) * bps)
            v = -v
            nb = (v.bit_length() + 7) // 8
            off = c * bps
            neg[off:off + nb] = v.to_bytes(nb, "little")
    return (int.from_bytes(pos, "little"),
            0 if neg is None else int.from_bytes(neg, "little"))


def _unpack(acc: int, nslots: int, bps: int) -> list[int]:
    """Extract the first nslots slot values (nonnegative) from a packed int."""
    buf = acc.to_bytes(2 * nslots * bps + 8, "little")
    return [int.from_bytes(buf[c * bps:(c + 1) * bps], "little")
            for c in range(nslots)]


class BiSeries:
    """Dense truncated bivariate series with exact int coefficients."""

    __slots__ = ("cmax", "dmax", "_rows")

    def __init__(self, cmax: int, dmax: int,
                 rows: tuple[tuple[int, ...], ...]):
        # rows[d][c]; use the constructors below rather than this directly
        self.cmax = cmax
        self.dmax = dmax
        self._rows = rows

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, cmax: int, dmax: int) -> "BiSeries":
        if cmax < 0 or dmax < 0:
            raise ValueError("box bounds must be nonnegative")
        row = (0,) * (cmax + 1)
        return cls(cmax, dmax, (row,) * (dmax + 1))

    @classmethod
    def one(cls, cmax: int, dmax: int) -> "BiSeries":
        return cls.monomial(cmax, dmax, 0, 0, 1)

    @classmethod
    def monomial(cls, cmax: int, dmax: int, c: int, d: int,
                 coeff: int = 1) -> "BiSeries":
        """The series coeff * x^c y^d (zero if (c,d) falls outside the box)."""
        if cmax < 0 or dmax < 0:
            raise ValueError("box bounds must be nonnegative")
        if c < 0 or d < 0:
            raise ValueError("exponents must be nonnegative")
        rows = [[0] * (cmax + 1) for _ in range(dmax + 1)]
        if c <= cmax and d <= dmax:
            rows[d][c] = coeff
        return cls(cmax, dmax, tuple(tuple(r) for r in rows))

    @classmethod
    def from_terms(cls, cmax: int, dmax: int,
                   terms: dict[tuple[int, int], int]) -> "BiSeries":
        """Build from a {(c, d): coefficient} mapping; out-of-box terms error."""
        rows = [[0] * (cmax + 1) for _ in range(dmax + 1)]
        for (c, d), v in terms.items():
            if not (0 <= c <= cmax and 0 <= d <= dmax):
                raise ValueError(f"term ({c},{d}) outside box ({cmax},{dmax})")
            rows[d][c] = v
        return cls(cmax, dmax, tuple(tuple(r) for r in rows))

    # ------------------------------------------------------------------
    # access
    # ------------------------------------------------------------------

    def coeff(self, c: int, d: int) -> int:
        """Coefficient of x^c y^d; reads outside the box error."""
        if not (0 <= c <= self.cmax and 0 <= d <= self.dmax):
            raise IndexError(f"({c},{d}) outside box ({self.cmax},{self.dmax})")
        return self._rows[d][c]

    def terms(self) -> Iterator[tuple[int, int, int]]:
        """Yield (c, d, coefficient) for every nonzero coefficient."""
        for d, row in enumerate(self._rows):
            for c, v in enumerate(row):
                if v:
                    yield c, d, v

    def grid(self) -> list[list[int]]:
        """Coefficients as a (cmax+1) x (dmax+1) nested list, entry [c][d]."""
        return [[self._rows[d][c] for d in range(self.dmax + 1)]
                for c in range(self.cmax + 1)]

    def is_zero(self) -> bool:
        return all(not any(row) for row in self._rows)

    def box(self) -> tuple[int, int]:
        return (self.cmax, self.dmax)

    def min_coefficient(self) -> int:
        return min(min(row) for row in self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.cmax == other.cmax and self.dmax == other.dmax
                and self._rows == other._rows)

    def __hash__(self) -> int:
        return hash((self.cmax, self.dmax, self._rows))

    def __repr__(self) -> str:
        shown = []
        for c, d, v in self.terms():
            shown.append(f"{v}*x^{c}*y^{d}")
            if len(shown) == 6:
                shown.append("...")
                break
        body = " + ".join(shown) if shown else "0"
        return f"BiSeries({self.cmax},{self.dmax}; {body})"

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------

    def _check_box(self, other: "BiSeries") -> None:
        if self.cmax != other.cmax or self.dmax != other.dmax:
            raise BoxMismatchError(
                f"box mismatch: ({self.cmax},{self.dmax}) vs "
                f"({other.cmax},{other.dmax})")

    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._check_box(other)
        rows = tuple(tuple(a + b for a, b in zip(ra, rb))
                     for ra, rb in zip(self._rows, other._rows))
        return BiSeries(self.cmax, self.dmax, rows)

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        self._check_box(other)
        rows = tuple(tuple(a - b for a, b in zip(ra, rb))
                     for ra, rb in zip(self._rows, other._rows))
        return BiSeries(self.cmax, self.dmax, rows)

    def __neg__(self) -> "BiSeries":
        rows = tuple(tuple(-v for v in row) for row in self._rows)
        return BiSeries(self.cmax, self.dmax, rows)

    def scale(self, k: int) -> "BiSeries":
        """Multiply every coefficient by the integer k."""
        rows = tuple(tuple(k * v for v in row) for row in self._rows)
        return BiSeries(self.cmax, self.dmax, rows)

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        return self._mul_bounded(other, self.dmax)

    def _mul_bounded(self, other: "BiSeries", dbound: int) -> "BiSeries":
        """Truncated product, computed only for rows d <= dbound.

        Rows above dbound come out zero.  With nonnegative exponents the
        retained rows are exact, so internal callers can shrink dbound
        when higher rows are about to be shifted out or truncated away.
        """
        self._check_box(other)
        cmax, dmax = self.cmax, self.dmax
        dbound = min(dbound, dmax)
        maxa, nega = _absmax(self._rows)
        maxb, negb = _absmax(other._rows)
        if maxa == 0 or maxb == 0:
            return BiSeries.zero(cmax, dmax)
        cells = (cmax + 1) * (dmax + 1)
        bits = maxa.bit_length() + maxb.bit_length() + cells.bit_length() + 1
        bps = (bits + 7) // 8
        pa = [_split_pack(r, bps) for r in self._rows]
        pb = [_split_pack(r, bps) for r in other._rows]
        zero_row = (0,) * (cmax + 1)
        out: list[tuple[int, ...]] = []
        nslots = cmax + 1
        signed = nega or negb
        for d in range(dbound + 1):
            accp = 0
            accn = 0
            for d1 in range(d + 1):
                p1, n1 = pa[d1]
                p2, n2 = pb[d - d1]
                if p1:
                    if p2:
                        accp += p1 * p2
                    if n2:
                        accn += p1 * n2
                if n1:
                    if n2:
                        accp += n1 * n2
                    if p2:
                        accn += n1 * p2
            if not accp and not accn:
                out.append(zero_row)
            elif not signed:
                out.append(tuple(_unpack(accp, nslots, bps)))
            else:
                pos = _unpack(accp, nslots, bps)
                neg = _unpack(accn, nslots, bps)
                out.append(tuple(p - n for p, n in zip(pos, neg)))
        out.extend([zero_row] * (dmax - dbound))
        return BiSeries(cmax, dmax, tuple(out))

    def __pow__(self, e: int) -> "BiSeries":
        return self._pow_bounded(e, self.dmax)

    def _pow_bounded(self, e: int, dbound: int) -> "BiSeries":
        """e-th truncated power by binary exponentiation (e >= 0)."""
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        result = BiSeries.one(self.cmax, self.dmax)
        base = self
        while e:
            if e & 1:
                result = result._mul_bounded(base, dbound)
            e >>= 1
            if e:
                base = base._mul_bounded(base, dbound)
        return result

    def shift(self, dc: int, dd: int) -> "BiSeries":
        """Multiply by the monomial x^dc y^dd; terms leaving the box drop."""
        if dc < 0 or dd < 0:
            raise ValueError("shift amounts must be nonnegative")
        cmax, dmax = self.cmax, self.dmax
        zero_row = (0,) * (cmax + 1)
        out = [zero_row] * min(dd, dmax + 1)
        for d in range(dmax + 1 - dd):
            src = self._rows[d]
            out.append(zero_row if dc > cmax else
                       (0,) * dc + src[:cmax + 1 - dc])
        return BiSeries(cmax, dmax, tuple(out))

    def truncate_degree(self, dbound: int) -> "BiSeries":
        """Zero out all rows with d > dbound (same box)."""
        if dbound >= self.dmax:
            return self
        zero_row = (0,) * (self.cmax + 1)
        rows = self._rows[:dbound + 1] + (zero_row,) * (self.dmax - dbound)
        return BiSeries(self.cmax, self.dmax, rows)

    # ------------------------------------------------------------------
    # division
    # ------------------------------------------------------------------

    def divide(self, den: "BiSeries") -> "BiSeries":
        """Exact series quotient self/den; den must have constant term +-1.

        The unit constant term keeps every quotient coefficient integral;
        mul(den, result) reproduces self on the whole box.
        """
        return self._divide_bounded(den, self.dmax)

    def invert(self) -> "BiSeries":
        """Multiplicative inverse on the box; constant term must be +-1."""
        return BiSeries.one(self.cmax, self.dmax)._divide_bounded(self, self.dmax)

    def _divide_bounded(self, den: "BiSeries", dbound: int) -> "BiSeries":
        """Quotient rows for d <= dbound, zero above (exact on retained rows)."""
        self._check_box(den)
        cmax, dmax = self.cmax, self.dmax
        dbound = min(dbound, dmax)
        unit = den._rows[0][0]
        if unit not in (1, -1):
            raise ValueError(f"constant term must be +-1, got {unit}")
        # univariate inverse (in x) of den's d=0 row
        den0 = den._rows[0]
        inv0 = [0] * (cmax + 1)
        inv0[0] = unit
        for c in range(1, cmax + 1):
            s = 0
            for j in range(1, c + 1):
                if den0[j]:
                    s += den0[j] * inv0[c - j]
            inv0[c] = -unit * s
        inv0_trivial = not any(den0[1:])
        maxden, _ = _absmax(den._rows)

        out_rows: list[list[int]] = []
        nslots = cmax + 1
        bps = 0
        pden: list[tuple[int, int]] = []
        pout: list[tuple[int, int]] = []
        maxout = 1
        for d in range(dbound + 1):
            needed = (maxden.bit_length() + maxout.bit_length()
                      + ((cmax + 1) * (d + 1)).bit_length() + 1)
            if (needed + 7) // 8 > bps:
                # slots grew: repack everything at the new width
                bps = max((needed + 7) // 8, 2 * bps)
                pden = [_split_pack(r, bps) for r in den._rows[:dbound + 1]]
                pout = [_split_pack(tuple(r), bps) for r in out_rows]
            accp = 0
            accn = 0
            for j in range(1, d + 1):
                p1, n1 = pden[j]
                p2, n2 = pout[d - j]
                if p1:
                    if p2:
                        accp += p1 * p2
                    if n2:
                        accn += p1 * n2
                if n1:
                    if n2:
                        accp += n1 * n2
                    if p2:
                        accn += n1 * p2
            rhs = list(self._rows[d])
            if accp or accn:
                pos = _unpack(accp, nslots, bps)
                neg = _unpack(accn, nslots, bps)
                rhs = [r - p + n for r, p, n in zip(rhs, pos, neg)]
            if inv0_trivial:
                row = [unit * v for v in rhs]
            else:
                row = [0] * nslots
                for c1, v1 in enumerate(inv0):
                    if v1:
                        for c2 in range(nslots - c1):
                            if rhs[c2]:
                                row[c1 + c2] += v1 * rhs[c2]
            out_rows.append(row)
            pout.append(_split_pack(tuple(row), bps))
            for v in row:
                a = v if v >= 0 else -v
                if a > maxout:
                    maxout = a
        zero_row = (0,) * nslots
        rows = tuple(tuple(r) for r in out_rows)
        rows += (zero_row,) * (dmax - dbound)
        return BiSeries(cmax, dmax, rows)


def mul_reference(a: BiSeries, b: BiSeries) -> BiSeries:
    """Nested-loop truncated product; the independent check for __mul__."""
    a._check_box(b)
    cmax, dmax = a.cmax, a.dmax
    out = [[0] * (cmax + 1) for _ in range(dmax + 1)]
    for d1, row1 in enumerate(a._rows):
        for c1, v1 in enumerate(row1):
            if not v1:
                continue
            for d2 in range(dmax + 1 - d1):
                row2 = b._rows[d2]
                target = out[d1 + d2]
                for c2 in range(cmax + 1 - c1):
                    v2 = row2[c2]
                    if v2:
                        target[c1 + c2] += v1 * v2
    return BiSeries(cmax, dmax, tuple(tuple(r) for r in out))
