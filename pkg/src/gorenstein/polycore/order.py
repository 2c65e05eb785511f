"""Monomial orders."""

from dataclasses import dataclass


@dataclass(frozen=True)
class TermOrder:
    """A monomial order on exponent vectors.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"weighted"``.  The weighted order
    compares weighted degree first and breaks ties by grevlex.  ``precedence``
    lists variable indices from largest to smallest; ``None`` means the
    declared variable order (x1 > x2 > ... > xk).
    """

    kind: str = "grevlex"
    weights: tuple = None
    precedence: tuple = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "weighted"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "weighted":
            if not self.weights or any(int(w) != w or w <= 0 for w in self.weights):
                raise ValueError("weighted order needs positive integer weights")
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.precedence is not None:
            object.__setattr__(self, "precedence", tuple(self.precedence))

    def key(self, exp):
        """Sort key: ``key(a) > key(b)`` iff monomial ``a`` is larger."""
        if self.precedence is not None:
            exp = tuple(exp[i] for i in self.precedence)
            weights = self.weights and tuple(self.weights[i] for i in self.precedence)
        else:
            weights = self.weights
        if self.kind == "lex":
            return tuple(exp)
        rev = tuple(-e for e in reversed(exp))
        if self.kind == "grevlex":
            return (sum(exp), rev)
        return (sum(w * e for w, e in zip(weights, exp)), sum(exp), rev)

    def describe(self):
        if self.kind == "weighted":
            return "weighted:" + ",".join(str(w) for w in self.weights)
        return self.kind

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text.startswith("weighted:"):
            ws = tuple(int(w) for w in text[len("weighted:"):].split(","))
            return cls("weighted", ws)
        return cls(text)


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")
