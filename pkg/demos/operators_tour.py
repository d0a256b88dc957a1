"""A short tour of the Cartier operators over F_3.

Run: python3 demos/operators_tour.py
"""
from cartier import make_field
from cartier.operators import cartier_delta, hasse, phi, phi_via_hasse, psi, qth_power_expansion
from cartier.series import parse_series, render

F = make_field(3)
x = parse_series(F, "1 + T + 2*T^4 + T^7 + T^10", 16)
print("x            =", render(x))

# phi_n keeps the exponents congruent to n mod 3^k, psi_n also divides them by 3^k
for n in (1, 2, 4):
    print(f"phi_{n}(x)     =", render(phi(n, x)))
    print(f"psi_{n}(x)     =", render(psi(n, x)))

# Delta_{r,1} splits x into three pieces
for r in range(3):
    print(f"Delta_{r},1(x) =", render(cartier_delta(r, 1, x)))

# the top operator of each digit block agrees with the Hasse derivative
print("phi_8 == D_8 :", phi(8, x) == hasse(8, x))
print("phi_5 via D  :", phi_via_hasse(5, x) == phi(5, x))

# cubing through the phi expansion
print("x^3 via phi  :", render(qth_power_expansion("via_phi", 1, x)))
print("x^3 direct   :", render(x ** 3))
