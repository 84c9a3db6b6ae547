from __future__ import annotations

import math
from typing import Sequence

import numpy as np


class StateArray:
    """
    D lane vectors stored component-major: ``data[l]`` holds the s stage
    values of component ``l`` contiguously (C order, shape ``(D, s)``).

    An optional ``shape`` with ``prod(shape) == D`` enables multi-index
    access; ``Y[k, i]`` and ``Y[flat(k, i)]`` address the same storage.
    """

    __slots__ = ("data", "shape", "_grid")

    def __init__(self, data: np.ndarray, shape: Sequence[int] | None = None):
        if data.ndim != 2:
            raise ValueError("StateArray data must have shape (D, s)")
        data = np.ascontiguousarray(data)
        dim = data.shape[0]
        shape = (dim,) if shape is None else tuple(int(n) for n in shape)
        if math.prod(shape) != dim:
            raise ValueError(f"shape {shape} does not match dimension {dim}")
        self.data = data
        self.shape = shape
        self._grid = data.reshape(shape + (data.shape[1],))

    # -------------------------
    # CONSTRUCTORS
    # -------------------------
    @classmethod
    def zeros(cls, dim: int, lanes: int, shape=None, dtype=np.float64) -> "StateArray":
        return cls(np.zeros((dim, lanes), dtype=dtype), shape)

    @classmethod
    def broadcast(cls, y: np.ndarray, lanes: int, shape=None) -> "StateArray":
        """Every lane of component l equals y[l]."""
        flat = np.asarray(y).reshape(-1)
        data = np.repeat(flat[:, None], lanes, axis=1)
        return cls(data, shape)

    @classmethod
    def from_bytes(cls, raw: bytes, dim: int, lanes: int, shape=None, dtype=np.float64) -> "StateArray":
        data = np.frombuffer(raw, dtype=dtype).reshape(dim, lanes).copy()
        return cls(data, shape)

    # -------------------------
    # PROPERTIES
    # -------------------------
    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def lanes(self) -> int:
        return self.data.shape[1]

    @property
    def dtype(self) -> np.dtype:
        return self.data.dtype

    # -------------------------
    # ACCESS
    # -------------------------
    def _check_flat(self, index: int) -> None:
        if index < 0 or index >= self.dim:
            raise IndexError(f"component {index} out of range for dimension {self.dim}")

    def __getitem__(self, index) -> np.ndarray:
        if isinstance(index, tuple):
            self._check_multi(index)
            return self._grid[index]
        self._check_flat(index)
        return self.data[index]

    def __setitem__(self, index, value) -> None:
        if isinstance(index, tuple):
            self._check_multi(index)
            self._grid[index] = value
            return
        self._check_flat(index)
        self.data[index] = value

    def _check_multi(self, index: tuple) -> None:
        if len(index) != len(self.shape):
            raise IndexError(f"index {index} does not match shape {self.shape}")
        for i, n in zip(index, self.shape):
            if i < 0 or i >= n:
                raise IndexError(f"index {index} out of range for shape {self.shape}")

    def flat_index(self, index: tuple) -> int:
        self._check_multi(index)
        return int(np.ravel_multi_index(index, self.shape))

    def block(self, start: int, stop: int, shape=None) -> "StateArray":
        """View of components [start, stop) sharing storage with self."""
        return self._view(self.data[start:stop], shape)

    @classmethod
    def _view(cls, data: np.ndarray, shape) -> "StateArray":
        view = cls.__new__(cls)
        dim = data.shape[0]
        view.data = data
        view.shape = (dim,) if shape is None else tuple(shape)
        view._grid = data.reshape(view.shape + (data.shape[1],))
        return view

    def copy(self) -> "StateArray":
        return StateArray(self.data.copy(), self.shape)

    def fill(self, value: float) -> None:
        self.data.fill(value)

    def to_bytes(self) -> bytes:
        return self.data.tobytes(order="C")

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"StateArray(dim={self.dim}, lanes={self.lanes}, shape={self.shape})"
