"""Variable layout of the augmented systems: x, then (lambda_j, b_{j-1}) pairs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

from src.core.exceptions import UsageError

BlockKind = Literal["x", "lambda", "b"]


@dataclass(frozen=True)
class VariableBlock:
    """Contiguous group of unknowns created together.

    ``step`` is the deflation step that created the block (0 for x). Step
    j+1 creates lambda_{j+1} and b_j.
    """

    kind: BlockKind
    step: int
    names: tuple[str, ...]

    @property
    def width(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class VariableLayout:
    blocks: tuple[VariableBlock, ...]

    @classmethod
    def from_x(cls, names: Sequence[str]) -> VariableLayout:
        return cls((VariableBlock("x", 0, tuple(names)),))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for block in self.blocks for name in block.names)

    @property
    def total(self) -> int:
        return sum(block.width for block in self.blocks)

    @property
    def n(self) -> int:
        return self.blocks[0].width

    def __iter__(self) -> Iterator[VariableBlock]:
        return iter(self.blocks)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UsageError(f"unknown variable {name!r}") from None

    def span(self, block: VariableBlock) -> range:
        start = 0
        for candidate in self.blocks:
            if candidate is block or candidate == block:
                return range(start, start + candidate.width)
            start += candidate.width
        raise UsageError(f"block {block} is not part of this layout")

    def indices(self, kind: BlockKind) -> list[int]:
        out: list[int] = []
        for block in self.blocks:
            if block.kind == kind:
                out.extend(self.span(block))
        return out

    def blocks_of(self, kind: BlockKind) -> list[VariableBlock]:
        return [block for block in self.blocks if block.kind == kind]

    def differentiation_indices(self, template_step: int) -> list[int]:
        """Unknowns of the system the template of step ``template_step`` multiplies.

        That is x together with every block created by an earlier step. The
        b block created alongside the template's own lambda block is never a
        differentiation variable.
        """
        out: list[int] = []
        for block in self.blocks:
            if block.step <= template_step - 1:
                out.extend(self.span(block))
        return out

    def append(self, block: VariableBlock) -> VariableLayout:
        self._check_fresh(block)
        return VariableLayout(self.blocks + (block,))

    def insert_before_last(self, block: VariableBlock) -> VariableLayout:
        self._check_fresh(block)
        return VariableLayout(self.blocks[:-1] + (block, self.blocks[-1]))

    def _check_fresh(self, block: VariableBlock) -> None:
        clash = set(block.names) & set(self.names)
        if clash:
            raise UsageError(f"variable names already in use: {sorted(clash)}")
