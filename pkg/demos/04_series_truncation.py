r"""
From analytic functions to polynomials
--------------------------------------
A power series with a certified tail bound can be cut to a polynomial that
is uniformly within ``eps`` on the closed disc.  Certifying the polynomial
then certifies the function, at the price of ``2 eps``.
"""
import math

from maxmod import SeriesSpec, certify_analytic, truncate_series

exp = SeriesSpec.exponential()
for eps in (1e-3, 1e-6, 1e-9, 1e-12):
    t = truncate_series(exp, eps)
    print(f"eps={eps:g}: degree {t.poly.degree()}, tail bound {t.tail_bound:.3e}")

#%%
# e^z at the origin.  The boundary maximum of |e^z| is e, at z = 1.
cert = certify_analytic(exp, 0, 1e-6)
b = cert.report.boundary
print(f"boundary enclosure [{b.sampled_max}, {b.certified_upper}] contains e={math.e}")
print("analytic margin:", cert.analytic_margin, cert.verdict)

#%%
# 1 / (1 - z/2) at z = 1, where the function reaches its maximum 2.
half = SeriesSpec.geometric(1, 0.5)
cert = certify_analytic(half, 1, 1e-4)
print(cert.truncation.poly.degree(), cert.report.value_at_z, cert.verdict)

#%%
# Series can also be read from text, as the command line does.
spec = SeriesSpec.from_text("rule:geometric 0.5 0.5 0.8")
print(spec, truncate_series(spec, 1e-8).poly.degree())
