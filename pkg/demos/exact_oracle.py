"""Exact area via boundary integration, checked against closed forms.

The covered region's boundary decomposes into circular arcs and polygon-edge
pieces; integrating x dy - y dx along it gives the area with no
discretization. Two scenes here have pencil-and-paper answers.
"""
import math

import numpy as np

from quadcover import (
    Circle,
    Point,
    Polygon,
    Scene,
    circle_boundary_arcs,
    exact_area,
    polygon_edge_pieces_in_union,
)


def square(half_side):
    h = float(half_side)
    return Polygon(np.array([[-h, -h], [h, -h], [h, h], [-h, h]]))


def main():
    # 1. quarter disk: unit circle at the corner of [0,2]^2
    corner = Polygon(np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]]))
    quarter = Scene(corner, (Circle(Point(0.0, 0.0), 1.0),))
    got = exact_area(quarter)
    print("quarter disk")
    print(f"  computed {got:.15f}")
    print(f"  pi/4     {math.pi / 4:.15f}")
    print(f"  |diff|   {abs(got - math.pi / 4):.1e}")

    # 2. union of two unit disks, centers 1/2 apart, inside a large square.
    # Closed form: 2*pi minus the lens area 2*acos(1/4) - (1/4)*sqrt(15/4).
    lens = Scene(
        square(10.0), (Circle(Point(0.0, 0.0), 1.0), Circle(Point(0.5, 0.0), 1.0))
    )
    closed = 2.0 * math.pi - (2.0 * math.acos(0.25) - 0.25 * math.sqrt(3.75))
    got = exact_area(lens)
    print("\nunion of two overlapping unit disks")
    print(f"  computed    {got:.15f}")
    print(f"  closed form {closed:.15f}")
    print(f"  |diff|      {abs(got - closed):.1e}")

    # 3. the boundary decomposition behind the number
    print("\nboundary pieces of the lens-union scene")
    for index in range(len(lens.circles)):
        for arc in circle_boundary_arcs(index, lens):
            span = math.degrees(arc.theta_end - arc.theta_start)
            print(
                f"  circle {arc.circle_index}: arc "
                f"[{math.degrees(arc.theta_start):7.2f}°, "
                f"{math.degrees(arc.theta_end):7.2f}°]  ({span:.2f}° kept)"
            )
    pieces = polygon_edge_pieces_in_union(lens)
    print(f"  polygon edge pieces inside the union: {len(pieces)}")

    # 4. a polygon edge cutting through a disk contributes a straight piece
    tray = Polygon(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))
    chord = Scene(tray, (Circle(Point(0.5, 0.0), 0.25),))
    print("\nhalf disk sitting on the square's bottom edge")
    for piece in polygon_edge_pieces_in_union(chord):
        print(
            f"  edge {piece.edge_index}: t in [{piece.t_start:.3f}, {piece.t_end:.3f}]"
        )
    print(f"  area {exact_area(chord):.15f}  (pi/32 * 4 = {math.pi * 0.25**2 / 2:.15f})")


if __name__ == "__main__":
    main()
