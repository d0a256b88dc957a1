"""Linear independence certificates from Cartier Wronskians.

Run: python3 demos/wronskian_tour.py
"""
from cartier import make_field
from cartier.series import TruncatedLaurent, render
from cartier.wronskian import find_certificate, independent_over_Km

F = make_field(2)
t = TruncatedLaurent.monomial(F, 1)
one = TruncatedLaurent.one(F)

for family in ([one, t], [one + t, one, t], [t ** 2 + t, t ** 3, t ** -1]):
    cert = find_certificate("phi", family)
    shown = ", ".join(render(x) for x in family)
    if cert.independent:
        print(f"({shown}) independent: eps={cert.eps}, W={render(cert.det)}")
    else:
        print(f"({shown}) {cert.verdict}: {cert.dependency}")

# over K_1 = F_2((t^2)), x and t^2 x are dependent, 1 and t are not
x = one + t + t ** 3
print("(1, t) over K_1:", independent_over_Km([one, t], 1).verdict)
c = independent_over_Km([x, t ** 2 * x], 1)
print("(x, t^2 x) over K_1:", c.verdict, [render(a) for a in c.dependency])
