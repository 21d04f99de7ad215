"""Closed-form falsity values, as masks over Π₀, to compare with the evaluator."""
from itertools import combinations

from src.krivine.logic import FiniteModel
from src.krivine.syntax import Process, pop


def predicted_vote_falsity(model: FiniteModel, pole_index: int, n: int, k: int = 1) -> int:
    """‖⊲n‖: the stacks t₁ · … · tₙ · π where, after dropping some k arguments, every tᵢ ⋆ π is in the pole."""
    pole = model.poles[pole_index]
    mask = 0
    for s, stack in enumerate(model.stacks):
        popped = pop(stack, n)
        if popped is None:
            continue
        arguments, rest = popped
        kept = [Process(t, rest) in pole for t in arguments]
        if any(all(ok for i, ok in enumerate(kept) if i not in dropped) for dropped in combinations(range(n), k)):
            mask |= 1 << s
    return mask


def predicted_gimel_A_falsity(model: FiniteModel, pole_index: int, n: int) -> int:
    """‖ℷ2 ⊨ Aₙ‖: the stacks t₁ · … · tₙ · π in which at most one tᵢ does not realize ⊥."""
    evaluator = model.evaluator(pole_index)
    absurd = evaluator.dual(model.full)
    mask = 0
    for s, stack in enumerate(model.stacks):
        popped = pop(stack, n)
        if popped is None:
            continue
        arguments, _ = popped
        outside = sum(1 for t in arguments if not absurd >> model.head_index[t] & 1)
        if outside <= 1:
            mask |= 1 << s
    return mask
