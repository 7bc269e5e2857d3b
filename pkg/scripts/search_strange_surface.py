"""Search one-cylinder genus-2 nets for a surface with two purely periodic
directions carrying three cylinders in total and an escaping horizontal flow.

The vertical direction is a single cylinder by construction: the net is a
band of horizontal extent ``h`` whose left side is cut into segments
``l1, l2, l3`` (bottom to top) and whose right side, raised by ``t``, carries
them in reverse order.
"""

import argparse
import itertools
import time

from fractions import Fraction

from tsurf.catalog import QSQRT2
from tsurf.covering import NotALattice, lattice_from_vectors
from tsurf.errors import TsurfError
from tsurf.flow import CylinderDecomposition, _closed_orbit, cylinder_decomposition
from tsurf.surface import PolygonNet, Vec2, stratum
from tsurf.topology import holonomy_map


def band_net(l1, l2, l3, h, t):
    K = l1.field
    z = K.zero()
    w = l1 + l2 + l3
    pts = [
        (z, z),
        (h, t),
        (h, t + l3),
        (h, t + l3 + l2),
        (h, t + w),
        (z, w),
        (z, l1 + l2),
        (z, l1),
    ]
    # bottom/top, right C/left C, right B/left B, right A/left A
    pairs = [(0, 4), (1, 5), (2, 6), (3, 7)]
    pairing = {}
    for a, b in pairs:
        pairing[(0, a)] = (0, b)
        pairing[(0, b)] = (0, a)
    return PolygonNet(K, [[Vec2(x, y) for x, y in pts]], pairing)


def horizontal_periodic_orbit(net, h, w, steps=400):
    """A closed horizontal orbit through the band's middle, if one is found."""
    K = net.field
    mid = h / 2
    for k in range(1, 24):
        y = w * Fraction(k, 24)
        try:
            return _closed_orbit(net, 0, Vec2(mid, y), Vec2.of(K, 1, 0), max_steps=steps)
        except TsurfError:
            continue
    return None


def check(net, cutoff):
    if not isinstance(lattice_from_vectors(list(holonomy_map(net).vectors)), NotALattice):
        return None
    v = cylinder_decomposition(net, (0, 1), cutoff)
    d = cylinder_decomposition(net, (2, 1), cutoff)
    if not isinstance(d, CylinderDecomposition) or not d.commensurable:
        return None
    if len(v.cylinders) + len(d.cylinders) != 3:
        return None
    hz = cylinder_decomposition(net, (1, 0), cutoff)
    if isinstance(hz, CylinderDecomposition):
        return None
    return v, d, hz


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cutoff", type=int, default=40)
    ap.add_argument("--limit", type=int, default=5)
    args = ap.parse_args()
    K = QSQRT2
    a = K.gen() - 1
    vals = [K.coerce(1), K.coerce(2), a, 1 + a, 2 * a, 2 + a]
    twists = [K.coerce(0), K.coerce(1), a, 1 + a]
    found = 0
    t0 = time.time()
    for l1, l2, l3, h in itertools.product(vals, repeat=4):
        for t in twists:
            try:
                net = band_net(l1, l2, l3, h, t)
                if stratum(net).multiplicities != (2,):
                    continue
                r = check(net, args.cutoff)
            except TsurfError:
                continue
            if r is None:
                continue
            orbit = horizontal_periodic_orbit(net, h, l1 + l2 + l3)
            if orbit is None:
                continue
            found += 1
            print("l1,l2,l3,h,t =", *(x.approx(6) for x in (l1, l2, l3, h, t)), f"({time.time() - t0:.0f}s)")
            print("    horizontal periodic orbit of length", orbit[0].approx(6))
            for c in r[0].cylinders + r[1].cylinders:
                print("   ", c.direction, "w =", c.width, "h =", c.height, c.core_class.coeffs)
            if found >= args.limit:
                return


if __name__ == "__main__":
    main()
