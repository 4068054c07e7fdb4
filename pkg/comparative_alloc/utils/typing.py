from __future__ import annotations

import argparse
from typing import Hashable, Mapping, Sequence, Union

import numpy as np

from comparative_alloc.utils.attr_dict import AttrDict

Config = Union[argparse.Namespace, AttrDict]

StatusCode = int

# user identifiers are opaque, anything hashable that prints nicely works
UserId = Hashable

ArrayLike = Union[Sequence[float], np.ndarray]

# per-user block counts requested by the scheduler
Demand = Mapping[UserId, int]
