"""Pure-Python reference implementation of the crossing kernel.

Input data are integers.  ``pieces`` is a flat sequence of 5-tuples
``(ax, ay, dx, dy, bounded)`` for the curve pieces (a segment from ``a`` to
``a + d`` or a ray from ``a`` along ``d``), ``prims`` holds the primitive
direction of every piece, and ``points`` lists homogeneous line vertices
``(X, Y, W)`` with ``W > 0``.  For each point the kernel returns the proper
crossings of the three ends of the line with the pieces, as triples
``(end index, piece index, multiplicity)``.  Points must lie off every
critical line, so no crossing is degenerate.
"""

ENDS = ((-1, 0), (0, -1), (1, 1))


def crossings(pieces, prims, points):
    out = []
    for X, Y, W in points:
        row = []
        for k in range(3):
            ux, uy = ENDS[k]
            for idx in range(len(pieces)):
                ax, ay, dx, dy, bounded = pieces[idx]
                dd = ux * dy - uy * dx
                if dd == 0:
                    continue
                Ax = W * ax - X
                Ay = W * ay - Y
                tn = Ax * dy - Ay * dx
                if (tn > 0) != (dd > 0):
                    continue
                sn = Ax * uy - Ay * ux
                if (sn > 0) != (dd > 0):
                    continue
                if bounded:
                    rest = W * dd - sn
                    if (rest > 0) != (dd > 0):
                        continue
                px, py = prims[idx]
                m = ux * py - uy * px
                row.append((k, idx, m if m > 0 else -m))
        out.append(row)
    return out
