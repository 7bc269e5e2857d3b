"""The regular octagon: exact horizontal cylinders, J and the classify verdict.

Writes octagon_horizontal.svg to the current directory.
"""

from pathlib import Path

from tsurf import catalog
from tsurf.covering import classify, exact_str
from tsurf.flow import cylinder_decomposition
from tsurf.invariants import is_j_simple, j_surface, phi
from tsurf.render import render_svg
from tsurf.surface import area


def main():
    net = catalog.get("octagon")
    print("area:", exact_str(area(net)))
    dec = cylinder_decomposition(net, (1, 0), 100)
    for c in dec.cylinders:
        print(f"cylinder: width {exact_str(c.width)}, height {exact_str(c.height)}, modulus {exact_str(c.height / c.width)}")
    print("widths commensurable:", dec.commensurable)
    J = j_surface(net)
    print("J:", J)
    print("phi(J):", exact_str(phi(J)))
    print("J simple:", is_j_simple(J))
    rep = classify(net, 2, 100)
    print("verdicts:", rep.verdicts)
    for w in rep.witnesses:
        print("witness:", w)
    Path("octagon_horizontal.svg").write_text(render_svg(net, dec))
    print("wrote octagon_horizontal.svg")


if __name__ == "__main__":
    main()
