"""Generates src/temme_coefficients.inc: Taylor coefficients in eta of the
c_k(eta) terms of Temme's uniform expansion of the regularized incomplete gamma
function,

    Q(a, x) = erfc(eta sqrt(a/2)) / 2 + exp(-a eta^2 / 2) / sqrt(2 pi a) * sum_k c_k(eta) a^-k,

with lambda = x/a and eta^2/2 = lambda - 1 - log(lambda), sign(eta) = sign(lambda - 1).
c_0 = 1/mu - 1/eta with mu = lambda - 1, then
c_k = c'_{k-1} / eta + (-1)^k g_k / mu, g_k the Stirling coefficients (DLMF 8.12).

Usage: python3 tools/gen_temme_coefficients.py > src/temme_coefficients.inc
Requires sympy.
"""
import sympy as sp
from fractions import Fraction as Fr
N = 52  # order of mu(eta) series
eta = sp.symbols('eta')
# mu - log(1+mu) = eta^2/2 ; solve mu = sum a_j eta^j, a_1 = 1
a = [Fr(0), Fr(1)]
def series_mul(p, q, n):
    r = [Fr(0)]*(n+1)
    for i, pi in enumerate(p[:n+1]):
        if pi == 0: continue
        for j, qj in enumerate(q[:n+1-i]):
            r[i+j] += pi*qj
    return r
for order in range(2, N+1):
    # find a[order] s.t. f(mu)=mu - log(1+mu) matches eta^2/2 up to eta^(order+1)
    best=None
    def f_coeffs(al):
        mu = al + [Fr(0)]*(N+2-len(al))
        # log(1+mu) = sum (-1)^{k+1} mu^k / k
        res = [Fr(0)]*(order+2)
        powk = [Fr(1)] + [Fr(0)]*(order+1)
        for k in range(1, order+2):
            powk = series_mul(powk, mu, order+1)
            coef = Fr((-1)**(k+1), k)
            for i in range(order+2): res[i] += coef*powk[i]
        return [ (mu[i] if i < len(mu) else 0) - res[i] for i in range(order+2)]
    # coefficient of eta^(order+1) is linear in a[order]
    c0 = f_coeffs(a + [Fr(0)])[order+1]
    c1 = f_coeffs(a + [Fr(1)])[order+1]
    target = Fr(0)
    a.append((target - c0)/(c1-c0))
mu = sum(sp.Rational(x.numerator, x.denominator)*eta**i for i, x in enumerate(a))
gk = [sp.Integer(1), sp.Rational(1,12), sp.Rational(1,288), sp.Rational(-139,51840), sp.Rational(-571,2488320),
      sp.Rational(163879,209018880), sp.Rational(5246819,75246796800), sp.Rational(-534703531,902961561600),
      sp.Rational(-4483131259,86684309913600), sp.Rational(432261921612371,514904800886784000)]
K = 10
TERMS = 25
inv_mu = sp.series(1/mu, eta, 0, N-2).removeO()
c = [sp.expand(inv_mu - 1/eta)]
for k in range(1, K):
    prev = c[-1]
    nxt = sp.expand(sp.diff(prev, eta)/eta + (-1)**k * gk[k] * inv_mu)
    # truncate high orders (keep up to usable)
    nxt = sum(nxt.coeff(eta, i)*eta**i for i in range(-3, N-2-2*k))
    c.append(sp.expand(nxt))
out = []
for k, ck in enumerate(c):
    coeffs = [ck.coeff(eta, i) for i in range(TERMS)]
    neg = [ck.coeff(eta, -i) for i in range(1,4)]
    assert all(x == 0 for x in neg), (k, neg)
    out.append(coeffs)

from mpmath import mp, mpf
mp.dps = 30
print("// Generated by tools/gen_temme_coefficients.py; do not edit.")
print("// kTemme[k][i] is the coefficient of eta^i in c_k(eta).")
print("constexpr int kTemmeOrders = %d;" % K)
print("constexpr int kTemmeTerms = %d;" % TERMS)
print("constexpr double kTemme[kTemmeOrders][kTemmeTerms] = {")
for row in out:
    vals = [mp.nstr(mpf(sp.Rational(x).p) / sp.Rational(x).q, 20, min_fixed=0, max_fixed=0) for x in row]
    print("    {" + ", ".join(vals) + "},")
print("};")
