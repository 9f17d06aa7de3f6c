#!/usr/bin/env python3
"""Independent oracle for the frozen test fixtures.

Root bits come from mpmath root finding, P-values from scipy special
functions, MT19937 from a direct Python transcription. Prints a C++ header.
"""
import math
import sys
import zlib

import mpmath
import numpy as np
from scipy.special import erfc, gammaincc

mpmath.mp.dps = 50


def root_bits(b, c, d, n):
    mpmath.mp.prec = n + 128
    f = lambda x: x**3 + b * x**2 + c * x + d
    lo, hi = mpmath.mpf(0), mpmath.mpf(1)
    x0 = mpmath.findroot(f, (lo, hi), solver="anderson", tol=mpmath.mpf(2) ** (-40))
    x = mpmath.findroot(f, x0, tol=mpmath.mpf(2) ** (-(n + 96)))
    v = int(mpmath.floor(x * mpmath.mpf(2) ** n))
    return format(v, "0{}b".format(n)) if n else ""


def pack(bits):
    bits = bits + "0" * (-len(bits) % 8)
    return bytes(int(bits[i:i + 8], 2) for i in range(0, len(bits), 8))


def mt19937(seed, count):
    mt = [0] * 624
    mt[0] = seed
    for i in range(1, 624):
        mt[i] = (1812433253 * (mt[i - 1] ^ (mt[i - 1] >> 30)) + i) & 0xFFFFFFFF
    idx = 624
    out = []
    for _ in range(count):
        if idx >= 624:
            for k in range(624):
                y = (mt[k] & 0x80000000) | (mt[(k + 1) % 624] & 0x7FFFFFFF)
                mt[k] = mt[(k + 397) % 624] ^ (y >> 1) ^ (0x9908B0DF if y & 1 else 0)
            idx = 0
        y = mt[idx]
        idx += 1
        y ^= y >> 11
        y ^= (y << 7) & 0x9D2C5680
        y ^= (y << 15) & 0xEFC60000
        y ^= y >> 18
        out.append(y)
    return out


# --- SP 800-22 tests -------------------------------------------------------

def monobit(e):
    n = len(e)
    s = abs(2 * int(e.sum()) - n) / np.sqrt(n)
    return [erfc(s / np.sqrt(2))]


def block_frequency(e, m=128):
    n = len(e) // m
    pi = e[: n * m].reshape(n, m).mean(axis=1)
    chi = 4 * m * float(((pi - 0.5) ** 2).sum())
    return [gammaincc(n / 2, chi / 2)]


def runs(e):
    n = len(e)
    pi = e.mean()
    if abs(pi - 0.5) >= 2 / np.sqrt(n):
        return [0.0]
    v = 1 + int((e[1:] != e[:-1]).sum())
    return [erfc(abs(v - 2 * n * pi * (1 - pi)) / (2 * np.sqrt(2 * n) * pi * (1 - pi)))]


def longest_run(e):
    n = len(e)
    if n < 6272:
        m, k, lo, pis = 8, 3, 1, [0.2148, 0.3672, 0.2305, 0.1875]
    elif n < 750000:
        m, k, lo, pis = 128, 5, 4, [0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124]
    else:
        m, k, lo, pis = 10000, 6, 10, [0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727]
    nb = n // m
    v = [0] * (k + 1)
    for i in range(nb):
        blk = e[i * m:(i + 1) * m]
        best = cur = 0
        for x in blk:
            cur = cur + 1 if x else 0
            best = max(best, cur)
        v[min(max(best - lo, 0), k)] += 1
    chi = sum((v[i] - nb * pis[i]) ** 2 / (nb * pis[i]) for i in range(k + 1))
    return [gammaincc(k / 2, chi / 2)]


def psi2(e, m):
    if m == 0:
        return 0.0
    n = len(e)
    ext = np.concatenate([e, e[: m - 1]]).astype(np.int64)
    idx = np.zeros(n, dtype=np.int64)
    for j in range(m):
        idx = (idx << 1) | ext[j:j + n]
    cnt = np.bincount(idx, minlength=1 << m)
    return sum(int(v) * int(v) for v in cnt) * (2**m) / n - n


def serial(e, m=16):
    p0, p1, p2 = psi2(e, m), psi2(e, m - 1), psi2(e, m - 2)
    d1 = p0 - p1
    d2 = p0 - 2 * p1 + p2
    return [gammaincc(2 ** (m - 2), d1 / 2), gammaincc(2 ** (m - 3), d2 / 2)]


def cusum(e):
    n = len(e)
    x = 2 * e.astype(np.int64) - 1
    out = []
    for seq in (x, x[::-1]):
        z = int(np.abs(np.cumsum(seq)).max())
        sn = np.sqrt(n)
        Phi = lambda t: 0.5 * erfc(-t / np.sqrt(2))
        s1 = sum(Phi((4 * k + 1) * z / sn) - Phi((4 * k - 1) * z / sn)
                 for k in range(int((-n / z + 1) / 4), int((n / z - 1) / 4) + 1))
        s2 = sum(Phi((4 * k + 3) * z / sn) - Phi((4 * k + 1) * z / sn)
                 for k in range(int((-n / z - 3) / 4), int((n / z - 1) / 4) + 1))
        out.append(1 - s1 + s2)
    return out


def phi(e, m):
    n = len(e)
    ext = np.concatenate([e, e[: max(m - 1, 0)]]).astype(np.int64)
    idx = np.zeros(n, dtype=np.int64)
    for j in range(m):
        idx = (idx << 1) | ext[j:j + n]
    cnt = np.bincount(idx, minlength=1 << m).astype(np.float64)
    p = cnt[cnt > 0] / n
    return math.fsum(p * np.log(p))


def apen(e, m=10):
    n = len(e)
    ap = phi(e, m) - phi(e, m + 1)
    chi = 2 * n * (np.log(2) - ap)
    return [gammaincc(2 ** (m - 1), chi / 2)]


SUITE = [
    ("monobit", monobit), ("block_frequency", block_frequency), ("runs", runs),
    ("longest_run", longest_run), ("serial", serial), ("cumulative_sums", cusum),
    ("approximate_entropy", apen),
]


def suite(bits):
    e = np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0")
    ps = []
    for _, f in SUITE:
        ps += [float(p) for p in f(e)]
    return ps


def cxx_bits_hex(bits):
    return pack(bits).hex()


def main():
    w = sys.stdout.write
    w("// Generated by tests/oracle/make_fixtures.py; do not edit.\n#pragma once\n\n")
    w("#include <array>\n#include <cstdint>\n\nnamespace fixtures {\n\n")

    w("struct RootPrefix {\n    long b, c, d;\n    const char* hex;  // first 256 bits, MSB-first\n};\n\n")
    seeds = [(0, 1, -1), (0, 2, -1), (1, 2, -1), (-1, 2, -1), (2, 3, -5), (3, 3, -1),
             (0, 5, -3), (0, 1001, -1), (0, 1001, -500), (0, 1001, -1001), (-3, 4, -1), (7, 17, -20)]
    w("inline constexpr std::array<RootPrefix, {}> kRootPrefixes{{{{\n".format(len(seeds)))
    for b, c, d in seeds:
        w('    {{{}, {}, {}, "{}"}},\n'.format(b, c, d, cxx_bits_hex(root_bits(b, c, d, 256))))
    w("}};\n\n")

    # Exact state after 64 steps from (0,1,-1), reference map on Python ints.
    t = (0, 1, -1)
    for _ in range(64):
        b, c, d = t
        t = (2 * b, 4 * c, 8 * d) if 1 + 2 * b + 4 * c + 8 * d > 0 else (2 * b + 3, 4 * b + 4 * c + 3, 2 * b + 4 * c + 8 * d + 1)
    w('inline constexpr const char* kState64[3] = {{"{}", "{}", "{}"}};\n\n'.format(*t))

    w("struct GammaPoint {\n    double a, x, q;\n};\n\n")
    pts = [(0.5, 0.1), (0.5, 2.0), (1.0, 1.0), (2.5, 0.3), (3.0, 10.0), (8.0, 6.5), (64.0, 60.0),
           (64.0, 80.0), (512.0, 500.0), (3906.0, 3950.0), (16384.0, 16500.0), (32768.0, 32000.0),
           (1.5, 40.0), (100.0, 1.0)]
    w("inline constexpr std::array<GammaPoint, {}> kIgamc{{{{\n".format(len(pts)))
    mpmath.mp.dps = 40
    for a, x in pts:
        q = mpmath.gammainc(a, x, mpmath.inf, regularized=True)
        w("    {{{!r}, {!r}, {}}},\n".format(a, x, mpmath.nstr(q, 20, min_fixed=-400, max_fixed=400) if q > 1e-300 else "0.0"))
    w("}};\n\n")

    n = 1000000
    cubic = root_bits(0, 1, -1, n)
    words = mt19937(5489, n // 32)
    mtbits = "".join(format(x, "032b") for x in words)
    for name, bits in (("Cubic", cubic), ("Mt", mtbits)):
        w("inline constexpr std::uint32_t k{}Crc32 = 0x{:08x}u;\n".format(name, zlib.crc32(pack(bits))))
        w("inline constexpr std::uint64_t k{}Ones = {};\n".format(name, bits.count("1")))
        ps = suite(bits)
        w("inline constexpr std::array<double, {}> k{}PValues{{{{\n".format(len(ps), name))
        for p in ps:
            w("    {!r},\n".format(p))
        w("}};\n\n")
    w("}  // namespace fixtures\n")


if __name__ == "__main__":
    main()
