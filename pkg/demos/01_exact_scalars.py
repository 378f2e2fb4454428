"""
Exact scalars
=============

Three domains are available: arbitrary-precision integers, rationals and
prime fields.  Nothing is ever rounded, and elements of different domains
refuse to mix.
"""

from fractions import Fraction

from dodgson import INTEGERS, RATIONALS, InexactDivisionError, Scalar, parse_scalar, prime_field

# integers never overflow
big = Scalar(10**30, INTEGERS)
print(big * big)

# rationals stay reduced
half, third = Scalar(Fraction(1, 2), RATIONALS), Scalar(Fraction(1, 3), RATIONALS)
print(half + third)

# GF(5): 3 / 2 is 4 because 2 * 4 = 8 = 3 mod 5
GF5 = prime_field(5)
print(Scalar(3, GF5) / Scalar(2, GF5))

# integer division must be exact; a remainder is an error, not a rational
try:
    Scalar(7, INTEGERS) / Scalar(2, INTEGERS)
except InexactDivisionError as exc:
    print("refused:", exc)

# the text grammar round-trips
for text in ("-12", "6/8", "9 mod 7"):
    s = parse_scalar(text)
    print(f"{text!r:>10} -> {s} in {s.domain}")
