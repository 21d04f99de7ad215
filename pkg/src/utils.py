from itertools import chain, combinations
from typing import Iterable, Iterator, Tuple, TypeVar

X = TypeVar("X")


def powerset(items: Iterable[X]) -> Iterator[Tuple[X, ...]]:
    """All subsets of `items`, smallest first."""
    pool = list(items)
    return chain.from_iterable(combinations(pool, size) for size in range(len(pool) + 1))
