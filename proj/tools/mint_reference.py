#!/usr/bin/env python3
"""Regenerate tests/reference_values.hpp.

All reference values are produced with mpmath at 50 significant digits and
frozen as exact IEEE doubles.  Sample ordinates are themselves doubles, so the
C++ side evaluates at bit-identical arguments.  Run from the repository root:

    python3 tools/mint_reference.py
"""
import os

import mpmath as mp

mp.mp.dps = 50

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "reference_values.hpp")


def d(x):
    """Exact double literal."""
    return repr(float(x))


def theta1(t):
    return t / 2 * mp.log(t / (2 * mp.pi)) - t / 2 - mp.pi / 8


def zp(t):
    return mp.siegelz(t, derivative=1)


def find_extremum(lo, hi):
    return mp.findroot(zp, (mp.mpf(lo), mp.mpf(hi)), solver="anderson")


def scan_sign_changes(f, lo, hi, n):
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    xs = [lo + (hi - lo) * k / n for k in range(n + 1)]
    vals = [f(x) for x in xs]
    return [(xs[k], xs[k + 1]) for k in range(n) if vals[k] * vals[k + 1] < 0]


def main():
    lines = []
    add = lines.append
    add("// Generated by tools/mint_reference.py -- do not edit by hand.")
    add("// Arbitrary-precision reference values (mpmath, 50 digits), frozen as doubles.")
    add("#pragma once")
    add("")
    add("namespace zcurve_test {")
    add("")

    # --- 50 log-spaced oracle samples: t, Z(t), theta(t) ---------------------
    samples = []
    for i in range(50):
        t = float(100.0 * 10.0 ** (4.0 * i / 49.0))
        tm = mp.mpf(t)
        samples.append((t, mp.siegelz(tm), mp.siegeltheta(tm)))
        print(f"sample {i + 1}/50 t={t:.6g}")
    add("// {t, Z(t), theta(t)} at 50 log-spaced ordinates in [100, 1e6]")
    add("inline constexpr int kNumOracleSamples = 50;")
    add("inline constexpr double kOracleSamples[50][3] = {")
    for t, z, th in samples:
        add(f"    {{{d(t)}, {d(z)}, {d(th)}}},")
    add("};")
    add("")

    # --- zeros of Z around [100, 114] ----------------------------------------
    zeros = [mp.im(mp.zetazero(n)) for n in range(29, 37)]
    add("// ordinates of zeros number 29..36 of Z (brackets [98.8, 114.4])")
    add(f"inline constexpr int kNumOracleZeros = {len(zeros)};")
    add("inline constexpr double kOracleZeros[] = {")
    for g in zeros:
        add(f"    {d(g)},")
    add("};")
    add("")

    # --- extrema of Z in [99, 110]: zeros of Z' ------------------------------
    mp.mp.dps = 32  # plenty for double-precision freezing; keeps quad affordable
    brackets = scan_sign_changes(zp, 99, 110, 220)
    extrema = [find_extremum(a, b) for a, b in brackets]
    add("// {t0, Z(t0)} for every zero of Z' in [99, 110]")
    add(f"inline constexpr int kNumOracleExtrema = {len(extrema)};")
    add("inline constexpr double kOracleExtrema[][2] = {")
    for t0 in extrema:
        add(f"    {{{d(t0)}, {d(mp.siegelz(t0))}}},")
    add("};")
    add("")

    # --- exact integral of |Z'| over [100, 110] ------------------------------
    # |Z'| integrates exactly to sum of |Z(b)-Z(a)| over monotone pieces.
    knots = [mp.mpf(100)] + [t0 for t0 in extrema if 100 < t0 < 110] + [mp.mpf(110)]
    absint = sum(abs(mp.siegelz(knots[i + 1]) - mp.siegelz(knots[i]))
                 for i in range(len(knots) - 1))
    add("// integral of |Z'| over [100,110], exact via monotone-piece telescoping")
    add(f"inline constexpr double kAbsZprimeInt_100_110 = {d(absint)};")
    add("")

    # --- arc length of the Z-curve over [100, 110] ---------------------------
    arc = mp.quad(lambda u: mp.sqrt(1 + zp(u) ** 2), knots)
    print("arc[100,110] =", mp.nstr(arc, 20))
    add("// integral of sqrt(1+Z'^2) over [100,110] (mpmath quad, split at extrema)")
    add(f"inline constexpr double kArcLength_100_110 = {d(arc)};")
    add("")

    # --- arc length of y = cos on [0, 2*pi] ----------------------------------
    mp.mp.dps = 50
    cos_arc = mp.quad(lambda u: mp.sqrt(1 + mp.sin(u) ** 2),
                      [0, mp.pi / 2, mp.pi, 3 * mp.pi / 2, 2 * mp.pi])
    add("// arc length of y = cos t over one period [0, 2*pi]")
    add(f"inline constexpr double kCosArcLength = {d(cos_arc)};")
    add("")

    # --- theta specials -------------------------------------------------------
    add("// theta(100) = Im ln Gamma(1/4 + 50i) - 50 ln pi")
    add(f"inline constexpr double kTheta100 = {d(mp.siegeltheta(100))};")
    t_gram = mp.findroot(lambda u: mp.siegeltheta(u) - mp.pi, mp.mpf("17.85"))
    add("// classical first Gram point: theta(t) = pi")
    add(f"inline constexpr double kGramPointTheta = {d(t_gram)};")
    t_gram1 = mp.findroot(lambda u: theta1(u) - mp.pi, mp.mpf("17.85"))
    add("// analogous point for the smooth phase: theta1(t) = pi")
    add(f"inline constexpr double kGramPointTheta1 = {d(t_gram1)};")
    add(f"inline constexpr double kTheta1At1000 = {d(theta1(mp.mpf(1000)))};")
    add(f"inline constexpr double kThetaAt1000 = {d(mp.siegeltheta(1000))};")
    add("")

    # --- Z' reference values --------------------------------------------------
    zprime_ts = [150.0, 10037.5, 100012.25]
    add("// {t, Z'(t)} spot values")
    add(f"inline constexpr int kNumOracleZprime = {len(zprime_ts)};")
    add("inline constexpr double kOracleZprime[][2] = {")
    for t in zprime_ts:
        add(f"    {{{d(t)}, {d(zp(mp.mpf(t)))}}},")
    add("};")
    add("")
    add("}  // namespace zcurve_test")
    add("")

    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w") as f:
        f.write("\n".join(lines))
    print("wrote", os.path.normpath(OUT))


if __name__ == "__main__":
    main()
