#!/usr/bin/env python3
"""Arbitrary-precision oracle for the frozen test values.

Every number in frozen_values.hpp is produced here with mpmath at high
working precision, independently of the C++ code path.  Re-run with

    python3 tests/oracles/frozen.py > tests/oracles/frozen_values.hpp
"""
import mpmath as mp

mp.mp.dps = 60


def poch_inf(z, q):
    p = mp.mpf(1)
    i = 0
    while True:
        f = z * q**i
        if abs(f) < mp.mpf(10) ** (-mp.mp.dps - 10):
            return p
        p *= 1 - f
        i += 1


def jv(scale, q, v, k=0):
    """j_v(scale * q^k, q^2), summed at a precision sized to the cancellation.

    The argument is formed inside the raised precision: on the lattice the
    value is ~q^{k^2} while the terms peak near q^{-k^2}.
    """
    q, v, scale = mp.mpf(q), mp.mpf(v), mp.mpf(scale)
    logz = float(mp.log10(abs(scale))) + k * float(mp.log10(q))
    peak = 0 if logz <= 0 else logz**2 / float(mp.log10(1 / q))
    with mp.workdps(int(3 * peak) + 100):
        z = scale * q**k
        t = mp.mpf(1)
        s = t
        mx = t
        n = 0
        while True:
            n += 1
            t = t * (-q ** (2 * n)) / ((1 - q ** (2 * n)) * (1 - q ** (2 * v + 2 * n))) * z * z
            s += t
            mx = max(mx, abs(t))
            if n > 5 and abs(t) < mx * mp.mpf(10) ** (-mp.mp.dps):
                break
        return +s


def c_qv(q, v):
    return 1 / (1 - q) * poch_inf(q ** (2 * v + 2), q**2) / poch_inf(q**2, q**2)


out = []


def emit(name, value):
    out.append("inline constexpr double %s = %s;" % (name, mp.nstr(value, 20, min_fixed=0, max_fixed=0)))


# q-Pochhammer, infinite product
emit("kPochInf_z025_q025", poch_inf(mp.mpf("0.25"), mp.mpf("0.25")))

# normalisation constants
for qs, vs, tag in [("0.5", "-0.5", "q05_vm05"), ("0.5", "0", "q05_v0"), ("0.3", "1.5", "q03_v15")]:
    emit("kCqv_" + tag, c_qv(mp.mpf(qs), mp.mpf(vs)))

# Hahn-Exton values
q = mp.mpf("0.5")
emit("kJv_z1_q05_v0", jv(1, q, 0))
emit("kJv_z8_q05_vm05", jv(1, q, mp.mpf("-0.5"), -3))
emit("kJv_z0p3_q05_vm05", jv(mp.mpf("0.3"), q, mp.mpf("-0.5")))
emit("kJv_lattice_m10_q05_vm05", jv(1, q, mp.mpf("-0.5"), -10))
q3 = mp.mpf(0.3)  # the double nearest 0.3, as the library sees it
emit("kJv_lattice_m8_q03_v15", jv(1, q3, mp.mpf("1.5"), -8))

# bilateral Jackson sum of x^2 exp(-x^2) on [-15, 60] vs a window twice as wide
def jack_inf(q, lo, hi):
    return (1 - q) * mp.fsum(q**n * (q ** (2 * n)) * mp.exp(-(q ** (2 * n))) for n in range(lo, hi + 1))

emit("kJacksonInf_x2exp_q05", jack_inf(q, -30, 120))


# product integral over [0, a] as a deep direct sum
def prod_direct(y, z, aexp, q, v, depth=600):
    a = q**aexp
    return (1 - q) * a ** (2 * v + 2) * mp.fsum(
        q ** (m * (2 * v + 2)) * jv(y, q, v, aexp + m) * jv(z, q, v, aexp + m) for m in range(depth)
    )

emit("kProd_y1_z05_a1_q05_v0", prod_direct(mp.mpf(1), mp.mpf("0.5"), 0, q, mp.mpf(0)))
emit("kProd_yqm1_zq2_aq2_q05_v0", prod_direct(q**-1, q**2, 2, q, mp.mpf(0)))

# transform of a deterministic f supported on [-3, 10], q = 0.5, v = 0
v0 = mp.mpf(0)
c0 = c_qv(q, v0)
fvals = {n: mp.sin(n + 1) / (1 + n * n) for n in range(-3, 11)}
for m in (-3, 0, 4, 10, 25):
    g = c0 * (1 - q) * mp.fsum(q ** (n * (2 * v0 + 2)) * fvals[n] * jv(1, q, v0, m + n) for n in fvals)
    emit("kTransformSin_m%s" % (str(m).replace("-", "m")), g)

# PSWF eigenproblem, q = 0.5, v = -1/2, a = 1, M = 60
vm = mp.mpf("-0.5")
c = c_qv(q, vm)
M = 60
w = [(1 - q) * q ** (m * (2 * vm + 2)) for m in range(M)]
J = {s: jv(1, q, vm, s) for s in range(0, 2 * M)}
B = mp.matrix(M, M)
for k in range(M):
    for m in range(M):
        B[k, m] = c * mp.sqrt(w[k] * w[m]) * J[k + m]
E, Q = mp.eigsy(B)
order = sorted(range(M), key=lambda i: -abs(E[i]))
for r in range(5):
    emit("kLambda%d_q05_vm05_a1" % r, E[order[r]])
# psi_0 samples and its extension at z = 0.3
i0 = order[0]
lam0 = E[i0]
u = [Q[m, i0] for m in range(M)]
psi = [abs(lam0) * u[m] / mp.sqrt(w[m]) for m in range(M)]
if psi[0] < 0:
    psi = [-x for x in psi]
emit("kPsi0_at_a_q05_vm05_a1", psi[0])
ext = c / lam0 * mp.fsum(w[m] * psi[m] * jv(mp.mpf("0.3"), q, vm, m) for m in range(M))
emit("kPsi0_at_0p3_q05_vm05_a1", ext)

print("// Generated by tests/oracles/frozen.py (mpmath, %d digits). Do not edit." % mp.mp.dps)
print("#pragma once")
print("")
print("namespace qpswf::frozen {")
print("")
print("\n".join(out))
print("")
print("}  // namespace qpswf::frozen")
