"""GF(2^64) with reduction polynomial x^64 + x^4 + x^3 + x + 1.

Elements are 64-bit unsigned integers read as polynomials over GF(2).
"""

from __future__ import annotations

MODULUS = (1 << 64) | 0b11011
MASK64 = (1 << 64) - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two non-negative integers."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int = MODULUS) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def gf_add(a: int, b: int) -> int:
    return a ^ b


def gf_mul(a: int, b: int) -> int:
    return poly_mod(clmul(a, b))


def gf_inv(a: int) -> int:
    """Inverse by the extended Euclidean algorithm over GF(2)[x]."""
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(2^64)")
    r0, r1 = MODULUS, a
    s0, s1 = 0, 1
    while r1:
        shift = r0.bit_length() - r1.bit_length()
        if shift < 0:
            r0, r1 = r1, r0
            s0, s1 = s1, s0
            continue
        r0 ^= r1 << shift
        s0 ^= s1 << shift
    # r0 == 1 here because the modulus is irreducible
    return poly_mod(s0)


def gf_pow(a: int, e: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = gf_mul(result, a)
        a = gf_mul(a, a)
        e >>= 1
    return result


class FieldElem:
    __slots__ = ("value",)

    def __init__(self, value: int | FieldElem = 0):
        if isinstance(value, FieldElem):
            value = value.value
        if not 0 <= value <= MASK64:
            raise ValueError("field elements are 64-bit")
        self.value = value

    @staticmethod
    def _v(other) -> int:
        return other.value if isinstance(other, FieldElem) else FieldElem(other).value

    def __add__(self, other) -> FieldElem:
        return FieldElem(self.value ^ self._v(other))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self) -> FieldElem:
        return self

    def __mul__(self, other) -> FieldElem:
        return FieldElem(gf_mul(self.value, self._v(other)))

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        return FieldElem(gf_inv(self.value))

    def __truediv__(self, other) -> FieldElem:
        return self * FieldElem(self._v(other)).inverse()

    def __pow__(self, e: int) -> FieldElem:
        return FieldElem(gf_pow(self.value, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElem({self.value:#x})"


def determinant(rows: list[list[int]]) -> int:
    """Determinant of a square matrix over GF(2^64) by Gaussian elimination."""
    M = [[FieldElem(x) for x in row] for row in rows]
    q = len(M)
    det = FieldElem(1)
    for c in range(q):
        piv = next((r for r in range(c, q) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]  # sign is irrelevant in characteristic 2
        det = det * M[c][c]
        inv = M[c][c].inverse()
        for r in range(c + 1, q):
            if M[r][c]:
                f = M[r][c] * inv
                M[r] = [M[r][j] + f * M[c][j] for j in range(q)]
    return det.value
