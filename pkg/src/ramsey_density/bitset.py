"""Bit-mask helpers for vertex sets (vertex v is bit 1 << v)."""


def iter_bits(mask):
    """Yield set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_tuple(mask):
    return tuple(iter_bits(mask))


def popcount(mask):
    return mask.bit_count()
