"""Closed derivations that between them use every typing rule, with the probe stacks their realizers are checked on."""
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

from src.krivine.adequacy.derivations import Derivation
from src.krivine.adequacy.notation import parse_derivation
from src.krivine.syntax import Stack, parse_stack


@dataclass(frozen=True)
class GoldenDerivation:
    name: str
    derivation: Derivation
    probes: Tuple[Stack, ...]


_CORPUS = [
    (
        "identity",
        r"""
        (All2Intro [] |- "\x.x" : "forall2 X X -> X" {"X"}
          (ImpIntro [] |- "\x.x" : "X -> X"
            (Axiom [x : "X"] |- "x" : "X")))
        """,
        ["#a0 . e0"],
    ),
    (
        "weakening",
        r"""
        (All2Intro [] |- "\x.\y.x" : "forall2 A forall2 B A -> B -> A" {"A"}
          (All2Intro [] |- "\x.\y.x" : "forall2 B A -> B -> A" {"B"}
            (ImpIntro [] |- "\x.\y.x" : "A -> B -> A"
              (ImpIntro [x : "A"] |- "\y.x" : "B -> A"
                (Axiom [x : "A", y : "B"] |- "x" : "A")))))
        """,
        ["#a0 . #a1 . e0"],
    ),
    (
        "peirce",
        r"""
        (All2Intro [] |- "cc" : "forall2 A forall2 B ((A -> B) -> A) -> A" {"A"}
          (All2Intro [] |- "cc" : "forall2 B ((A -> B) -> A) -> A" {"B"}
            (Peirce [] |- "cc" : "((A -> B) -> A) -> A")))
        """,
        ["#a0 . e0"],
    ),
    (
        "top",
        r"""
        (All2Intro [] |- "\x.\y.y" : "forall2 X X -> Top" {"X"}
          (ImpIntro [] |- "\x.\y.y" : "X -> Top"
            (TopIntro [x : "X"] |- "\y.y" : "Top")))
        """,
        ["#a0 . #a1 . e0"],
    ),
    (
        "ex-falso",
        r"""
        (All2Intro [] |- "\x.x" : "forall2 X Bot -> X" {"X"}
          (ImpIntro [] |- "\x.x" : "Bot -> X"
            (BotElim [x : "Bot"] |- "x" : "X"
              (Axiom [x : "Bot"] |- "x" : "Bot"))))
        """,
        ["#a0 . e0"],
    ),
    (
        "modus-ponens",
        r"""
        (All2Intro [] |- "\f.\x.f x" : "forall2 A forall2 B (A -> B) -> A -> B" {"A"}
          (All2Intro [] |- "\f.\x.f x" : "forall2 B (A -> B) -> A -> B" {"B"}
            (ImpIntro [] |- "\f.\x.f x" : "(A -> B) -> A -> B"
              (ImpIntro [f : "A -> B"] |- "\x.f x" : "A -> B"
                (ImpElim [f : "A -> B", x : "A"] |- "f x" : "B"
                  (Axiom [f : "A -> B", x : "A"] |- "f" : "A -> B")
                  (Axiom [f : "A -> B", x : "A"] |- "x" : "A"))))))
        """,
        ["#a0 . #a1 . e0"],
    ),
    (
        "instance",
        r"""
        (All2Intro [] |- "\x.x" : "forall2 X (forall y X(y)) -> X(0)" {"X"}
          (ImpIntro [] |- "\x.x" : "(forall y X(y)) -> X(0)"
            (All1Elim [x : "forall y X(y)"] |- "x" : "X(0)" {"0"}
              (Axiom [x : "forall y X(y)"] |- "x" : "forall y X(y)"))))
        """,
        ["#a0 . e0"],
    ),
    (
        "reflexivity",
        r"""
        (All1Intro [] |- "\x.x" : "forall y y = y" {"y"}
          (All2Intro [] |- "\x.x" : "y = y" {"Z"}
            (ImpIntro [] |- "\x.x" : "Z(y) -> Z(y)"
              (Axiom [x : "Z(y)"] |- "x" : "Z(y)"))))
        """,
        ["#a0 . e0"],
    ),
    (
        "specialise",
        r"""
        (ImpIntro [] |- "\x.x" : "(forall2 X X -> X) -> Top -> Top"
          (All2Elim [x : "forall2 X X -> X"] |- "x" : "Top -> Top" {"", "Top"}
            (Axiom [x : "forall2 X X -> X"] |- "x" : "forall2 X X -> X")))
        """,
        ["#a0 . #a1 . e0"],
    ),
    (
        "double-negation",
        r"""
        (All2Intro [] |- "\f.cc (\k.f k)" : "forall2 A ((A -> Bot) -> Bot) -> A" {"A"}
          (ImpIntro [] |- "\f.cc (\k.f k)" : "((A -> Bot) -> Bot) -> A"
            (ImpElim [f : "(A -> Bot) -> Bot"] |- "cc (\k.f k)" : "A"
              (Peirce [f : "(A -> Bot) -> Bot"] |- "cc" : "((A -> Bot) -> A) -> A")
              (ImpIntro [f : "(A -> Bot) -> Bot"] |- "\k.f k" : "(A -> Bot) -> A"
                (BotElim [f : "(A -> Bot) -> Bot", k : "A -> Bot"] |- "f k" : "A"
                  (ImpElim [f : "(A -> Bot) -> Bot", k : "A -> Bot"] |- "f k" : "Bot"
                    (Axiom [f : "(A -> Bot) -> Bot", k : "A -> Bot"] |- "f" : "(A -> Bot) -> Bot")
                    (Axiom [f : "(A -> Bot) -> Bot", k : "A -> Bot"] |- "k" : "A -> Bot")))))))
        """,
        ["#a0 . e0"],
    ),
]


@lru_cache(maxsize=1)
def golden_corpus() -> List[GoldenDerivation]:
    return [
        GoldenDerivation(name, parse_derivation(text), tuple(parse_stack(s) for s in probes))
        for name, text, probes in _CORPUS
    ]
