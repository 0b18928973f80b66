"""Dense complex cartesian tensors of arbitrary rank over 3-dimensional space.

A rank-n tensor is a ``numpy.ndarray`` of shape ``(3,)*n`` and dtype complex.
Entries are stored row-major with the first index most significant, so the
flat offset of the multi-index ``(i1, ..., in)`` is ``i1*3**(n-1) + ... + in``
and the outer product of two tensors is a plain concatenation of index
strings.  Rank 0 is a 0-d array (a scalar).

All functions return freshly allocated arrays; inputs are never mutated.
"""

import itertools
import json
import math
import os

import numpy as np

DEFAULT_RANK_CAP = 12

# symmetrize() walks all rank! permutations up to this rank and switches to
# a multiset-based evaluation beyond (symmetric output depends only on the
# multiset of index values).
_PERMUTATION_RANK_LIMIT = 8


def rank_cap():
    """Maximum tensor rank allowed for dense allocation.

    The default of 12 (3**12 entries, about 4 MiB complex) can be overridden
    with the ``IRTENSOR_RANK_CAP`` environment variable.
    """
    env = os.environ.get("IRTENSOR_RANK_CAP")
    return int(env) if env else DEFAULT_RANK_CAP


def as_tensor(a):
    """Coerce array-like input to a complex tensor, validating its shape."""
    arr = np.asarray(a, dtype=complex)
    if arr.shape != (3,) * arr.ndim:
        raise ValueError(f"tensor axes must all have length 3, got shape {arr.shape}")
    return arr


def zeros(rank):
    """All-zero tensor of the given rank."""
    _check_rank(rank)
    return np.zeros((3,) * rank, dtype=complex)


def _check_rank(rank):
    if rank < 0:
        raise ValueError("rank must be non-negative")
    if rank > rank_cap():
        raise ValueError(f"rank {rank} exceeds the configured cap {rank_cap()}")


def rank_of(a):
    return np.asarray(a).ndim


def encode_index(digits):
    """Flat offset of a multi-index (first digit most significant)."""
    offset = 0
    for d in digits:
        if d not in (0, 1, 2):
            raise ValueError(f"multi-index digit {d} out of range")
        offset = 3 * offset + d
    return offset


def decode_index(offset, rank):
    """Multi-index tuple for a flat offset; inverse of :func:`encode_index`."""
    if not 0 <= offset < 3**rank:
        raise ValueError(f"offset {offset} out of range for rank {rank}")
    digits = []
    for _ in range(rank):
        offset, d = divmod(offset, 3)
        digits.append(d)
    return tuple(reversed(digits))


def outer(a, b):
    """Outer (tensor) product; the result rank is the sum of the input ranks."""
    a = as_tensor(a)
    b = as_tensor(b)
    _check_rank(a.ndim + b.ndim)
    return np.multiply.outer(a, b)


def outer_power(v, n):
    """n-fold outer product of a tensor with itself (rank 0 gives scalar 1)."""
    v = as_tensor(v)
    _check_rank(v.ndim * n)
    out = np.ones((), dtype=complex)
    for _ in range(n):
        out = np.multiply.outer(out, v)
    return out


def contract(a, b, pairs):
    """Contract tensors ``a`` and ``b`` over the given ``(axis_a, axis_b)`` pairs.

    No complex conjugation is applied; contract ``a.conj()`` with ``a`` over
    all axes to obtain the squared Frobenius norm.
    """
    a = as_tensor(a)
    b = as_tensor(b)
    if not pairs:
        return outer(a, b)
    axes_a = [p[0] for p in pairs]
    axes_b = [p[1] for p in pairs]
    if len(set(axes_a)) != len(axes_a) or len(set(axes_b)) != len(axes_b):
        raise ValueError("contraction pairs must use distinct indices")
    for ia, ib in pairs:
        if not (0 <= ia < a.ndim and 0 <= ib < b.ndim):
            raise ValueError(f"invalid contraction pair ({ia}, {ib})")
    return np.tensordot(a, b, axes=(axes_a, axes_b))


def contract_all(a, b):
    """Full contraction of two equal-rank tensors (no conjugation)."""
    a = as_tensor(a)
    b = as_tensor(b)
    if a.ndim != b.ndim:
        raise ValueError("full contraction requires equal ranks")
    return complex(np.tensordot(a, b, axes=a.ndim)) if a.ndim else complex(a * b)


def symmetrize(a):
    """Sum of ``a`` over all rank! index permutations (not normalized).

    For a tensor that is already totally symmetric the result is
    ``rank! * a``; divide by ``math.factorial(rank)`` for the symmetric part.
    """
    a = as_tensor(a)
    n = a.ndim
    if n <= 1:
        return a.copy()
    if n <= _PERMUTATION_RANK_LIMIT:
        out = np.zeros_like(a)
        for perm in itertools.permutations(range(n)):
            out += a.transpose(perm)
        return out
    return _symmetrize_multiset(a)


def _symmetrize_multiset(a):
    # Sym(a)[idx] = prod(mult_k!) * sum over distinct rearrangements of idx.
    n = a.ndim
    flat = a.reshape(-1)
    out = np.zeros(3**n, dtype=complex)
    sums = {}
    for offset, idx in enumerate(itertools.product((0, 1, 2), repeat=n)):
        key = (idx.count(0), idx.count(1), idx.count(2))
        sums[key] = sums.get(key, 0) + flat[offset]
    for offset, idx in enumerate(itertools.product((0, 1, 2), repeat=n)):
        key = (idx.count(0), idx.count(1), idx.count(2))
        stab = math.factorial(key[0]) * math.factorial(key[1]) * math.factorial(key[2])
        out[offset] = stab * sums[key]
    return out.reshape((3,) * n)


def symmetric_part(a):
    """Average of ``a`` over all index permutations."""
    a = as_tensor(a)
    return symmetrize(a) / math.factorial(a.ndim)


def trace_pair(a, i, j):
    """Trace over index pair ``(i, j)``; the rank drops by two."""
    a = as_tensor(a)
    if i == j or not (0 <= i < a.ndim and 0 <= j < a.ndim):
        raise ValueError(f"invalid trace indices ({i}, {j}) for rank {a.ndim}")
    return np.trace(a, axis1=i, axis2=j)


def frobenius_norm(a):
    return float(np.linalg.norm(np.asarray(a, dtype=complex).reshape(-1)))


def max_asymmetry(a):
    """Largest entrywise deviation of ``a`` from its symmetric part."""
    a = as_tensor(a)
    return float(np.max(np.abs(a - symmetric_part(a)))) if a.ndim >= 2 else 0.0


def delta():
    """Rank-2 identity tensor."""
    return np.eye(3, dtype=complex)


def levi_civita():
    """Rank-3 totally antisymmetric tensor with eps[0,1,2] = +1."""
    eps = np.zeros((3, 3, 3), dtype=complex)
    for i, j, k in itertools.permutations(range(3)):
        eps[i, j, k] = (
            1.0 if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1.0
        )
    return eps


def to_json_dict(a):
    """JSON form ``{"rank": n, "entries": [[re, im], ...]}`` in flat order."""
    a = as_tensor(a)
    flat = a.reshape(-1)
    return {
        "rank": int(a.ndim),
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def from_json_dict(d):
    rank = int(d["rank"])
    entries = d["entries"]
    if len(entries) != 3**rank:
        raise ValueError(
            f"expected {3**rank} entries for rank {rank}, got {len(entries)}"
        )
    flat = np.array([complex(re, im) for re, im in entries])
    return flat.reshape((3,) * rank)


def dumps(a, **kwargs):
    return json.dumps(to_json_dict(a), **kwargs)


def loads(s):
    return from_json_dict(json.loads(s))
