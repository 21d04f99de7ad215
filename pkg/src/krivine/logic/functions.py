from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Mapping, Optional

from src.krivine.errors import ResolutionError
from src.krivine.logic.formulas import FOApp, FOTerm, FOVar


@dataclass(frozen=True)
class FunctionSymbol:
    name: str
    arity: int
    fn: Callable[..., int]


class FunctionRegistry:
    """
    Named total functions on naturals. Symbols can be registered under
    several spellings (`add` and `+`, `join` and `∨`).
    """

    def __init__(self) -> None:
        self._symbols: Dict[str, FunctionSymbol] = {}

    def register(self, name: str, arity: int, fn: Callable[..., int], aliases: Iterable[str] = ()) -> None:
        symbol = FunctionSymbol(name, arity, fn)
        for spelling in (name, *aliases):
            if spelling in self._symbols:
                raise ValueError(f"Function symbol already exists: {spelling}")
            self._symbols[spelling] = symbol

    def lookup(self, name: str, arity: int) -> FunctionSymbol:
        symbol = self._symbols.get(name)
        if symbol is None:
            raise ResolutionError(f"Unknown function symbol: {name}")
        if symbol.arity != arity:
            raise ResolutionError(f"Function symbol {name} takes {symbol.arity} arguments, got {arity}")
        return symbol

    def __contains__(self, name: object) -> bool:
        return name in self._symbols


def _boolean(value: bool) -> int:
    return 1 if value else 0


def default_registry(top: Optional[int] = None) -> FunctionRegistry:
    """With `top`, s, add and mul saturate there, so that 0 is nobody's successor."""
    cap: Callable[[int], int] = (lambda n: n) if top is None else (lambda n: min(n, top))
    registry = FunctionRegistry()
    registry.register("0", 0, lambda: 0)
    registry.register("s", 1, lambda n: cap(n + 1))
    registry.register("add", 2, lambda m, n: cap(m + n), aliases=["+"])
    registry.register("mul", 2, lambda m, n: cap(m * n), aliases=["*", "·"])
    registry.register("min", 2, min)
    registry.register("max", 2, max)
    # Boolean operations: any non-zero argument counts as true.
    registry.register("join", 2, lambda m, n: _boolean(m != 0 or n != 0), aliases=["∨"])
    registry.register("meet", 2, lambda m, n: _boolean(m != 0 and n != 0), aliases=["∧"])
    registry.register("compl", 1, lambda m: _boolean(m == 0), aliases=["¬"])
    return registry


DEFAULT_REGISTRY = default_registry()


def fo_value(
    term: FOTerm,
    registry: FunctionRegistry = DEFAULT_REGISTRY,
    modulus: Optional[int] = None,
    env: Optional[Mapping[str, int]] = None,
) -> int:
    """Evaluate a first-order term; with a modulus every intermediate result is reduced."""
    match term:
        case FOVar(name):
            if env is None or name not in env:
                raise ResolutionError(f"Free individual variable: {name}")
            return env[name]
        case FOApp(symbol, args):
            fn = registry.lookup(symbol, len(args)).fn
            value = fn(*(fo_value(a, registry, modulus, env) for a in args))
            return value % modulus if modulus else value
    raise TypeError(f"Not a first-order term: {term!r}")
