"""Element sets as int bitmasks (bit i = element i is in the set)."""

from collections.abc import Iterable


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def canonical_mask_order(masks: Iterable[int]) -> list[int]:
    """Sort set-masks by cardinality, then lexicographically by sorted members."""
    return sorted(masks, key=lambda m: (m.bit_count(), members(m)))
