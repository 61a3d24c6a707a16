"""Generated by ``tfpl.puzzles.calibrate_boundary_convention``; do not edit.

Each flag says whether the boundary word on that side is the complement
of the outer edge labels."""

COMPLEMENT_LEFT = False
COMPLEMENT_RIGHT = False
COMPLEMENT_BOTTOM = False


def _flip(s):
    return s.translate(str.maketrans("01", "10"))


def decode(raw):
    """Boundary words ``(u, v, w)`` from the raw outer labels of the three sides."""
    flags = (COMPLEMENT_LEFT, COMPLEMENT_RIGHT, COMPLEMENT_BOTTOM)
    return tuple(_flip(x) if f else x for x, f in zip(raw, flags))
