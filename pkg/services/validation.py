from typing import List, Tuple

from utils.numtheory import is_prime, prime_power_base

class RunInputValidator:
    """Validate run inputs before any simulation happens"""

    @staticmethod
    def validate_modulus(n: int) -> Tuple[bool, str]:
        """N must be an odd composite that is not a prime power"""
        if n < 4:
            return False, f"must be >= 4, got {n}"

        if n % 2 == 0:
            return False, f"{n} is even (2 is a trivial factor)"

        if is_prime(n):
            return False, f"{n} is prime"

        root = prime_power_base(n)
        if root is not None:
            return False, f"{n} is a power of the prime {root}"

        return True, "Valid"

    @staticmethod
    def validate_base(base: int, n: int) -> Tuple[bool, str]:
        """Base must lie in [2, N-1]"""
        if not 2 <= base <= n - 1:
            return False, f"must lie in [2, {n - 1}], got {base}"

        return True, "Valid"

    @staticmethod
    def validate_block_sizes(blocks: List[int], max_block_size: int) -> Tuple[bool, str]:
        """At least one block, every size in [1, max_block_size]"""
        if not blocks:
            return False, "at least one block is required"

        for index, m in enumerate(blocks, start=1):
            if not 1 <= m <= max_block_size:
                return False, f"block {index} has size {m}, expected 1..{max_block_size}"

        return True, "Valid"

    @staticmethod
    def validate_overlaps(blocks: List[int], overlaps: List[int]) -> Tuple[bool, str]:
        """t_1 = 0, and for i >= 2: t_i <= min(m_{i-1}, m_i) and t_i < m_i"""
        if len(overlaps) != len(blocks):
            return False, f"expected {len(blocks)} overlaps (one per block), got {len(overlaps)}"

        if overlaps[0] != 0:
            return False, f"overlap 1 must be 0, got {overlaps[0]}"

        for index in range(1, len(blocks)):
            t, m_left, m_right = overlaps[index], blocks[index - 1], blocks[index]
            if t < 0:
                return False, f"overlap {index + 1} is negative ({t})"
            if t > min(m_left, m_right):
                return False, f"overlap {index + 1} is {t}, exceeds min(m_{index}, m_{index + 1}) = {min(m_left, m_right)}"
            if t >= m_right:
                # the carry bit sits at position t of the right block
                return False, f"overlap {index + 1} equals block size {m_right}; carry bit undefined"

        return True, "Valid"
