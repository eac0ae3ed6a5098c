import re

# MSB-first: "110" is 6, no reversal
_BITS = re.compile(r"^[01]*$")


def to_bits(value: int, width: int) -> str:
    if value < 0 or value >= (1 << width):
        raise ValueError(f"{value} does not fit in {width} bits")
    return format(value, f"0{width}b") if width else ""


def to_int(bits: str) -> int:
    if not _BITS.match(bits):
        raise ValueError(f"not a bitstring: {bits!r}")
    return int(bits, 2) if bits else 0


def head(bits: str, t: int) -> str:
    """First t bits"""
    return bits[:t]


def tail(bits: str, t: int) -> str:
    """Last t bits"""
    return bits[len(bits) - t:] if t else ""
