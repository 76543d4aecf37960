"""Oracle values for gamma, Binet remainder and hypergeometric series."""
import mpmath as mp
from oracle_common import emit

LN_GAMMA = [(0.5, 0.0), (1e-3, 0.0), (3.7, -2.2), (0.25, 40.0), (12.0, 0.0), (150.5, 3.0), (0.5, 1e-8)]


def binet(z):
    return mp.gamma(z) / (mp.sqrt(2 * mp.pi) * mp.exp((z - 0.5) * mp.log(z) - z)) - 1


BINET = [(1.0, 0.0), (0.0, 10.0), (0.25, 0.0), (3.0, 4.0), (0.0, 0.25), (50.0, 1.0)]

HYP1F2 = [  # a, b1 = re + i im, b2, z
    (1.0, 3.0, -1.0, 3.0, 0.25),
    (1.0, 4.0, -5.0, 4.0, 0.09),
    (1.0, 2.0, 0.0, 2.0, 4.0),
]
HYP1F1 = [  # rho, tau, x for 1F1(1/2 + rho + i tau; 1 + 2 i tau; -x)
    (0.2, 3.0, 0.5),
    (-0.3, 1.0, 0.9),
    (0.0, 10.0, 5.0),
]
HYP2F1 = [  # s, tau, c, z for 2F1(s + i tau, s - i tau; c; z)
    (0.75, 2.0, 1.25, -0.5),
    (0.75, 2.0, 1.25, -4.0),
    (0.375, 5.0, 1.25, -100.0),
    (0.5, 1.0, 1.5, -1.0),
]


def main():
    tables = [
        ("kLnGamma", [((re, im), mp.loggamma(mp.mpc(re, im))) for re, im in LN_GAMMA]),
        ("kBinet", [((re, im), binet(mp.mpc(re, im))) for re, im in BINET]),
        ("kHyp1f2", [((b1r, b1i, b2, z),
                      mp.hyp1f2(1, mp.mpc(b1r, b1i), b2, z)) for _, b1r, b1i, b2, z in HYP1F2]),
        ("kHyp1f1", [((r, t, x), mp.hyp1f1(mp.mpc(0.5 + r, t), mp.mpc(1, 2 * t), -x)) for r, t, x in HYP1F1]),
        ("kHyp2f1", [((s, t, c, z), mp.hyp2f1(mp.mpc(s, t), mp.mpc(s, -t), c, z)) for s, t, c, z in HYP2F1]),
    ]
    emit("special.py", tables)


if __name__ == "__main__":
    main()
