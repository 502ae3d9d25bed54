from typing import List, Sequence, TypeVar

T = TypeVar("T")


def merge_sequences(seqs: Sequence[Sequence[T]]) -> List[T]:
    """
    Round-robin interleaving of finitely many sequences.

    Each input occurs in the output as a subsequence, in order, and the output length is
    the sum of the input lengths; exhausted inputs are skipped.
    Example:
        >>> merge_sequences([("x0", "x1"), ("y0", "y1")])
        ['x0', 'y0', 'x1', 'y1']
    """
    if not seqs or all(len(seq) == 0 for seq in seqs):
        raise ValueError("merge_sequences needs at least one non-empty sequence")
    merged = []
    longest = max(len(seq) for seq in seqs)
    for position in range(longest):
        for seq in seqs:
            if position < len(seq):
                merged.append(seq[position])
    return merged


def is_subsequence(sub: Sequence[T], seq: Sequence[T]) -> bool:
    """True when `sub` embeds into `seq` by an order-preserving injection."""
    iterator = iter(seq)
    return all(any(item == candidate for candidate in iterator) for item in sub)
