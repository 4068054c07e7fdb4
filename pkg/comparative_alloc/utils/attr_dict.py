from __future__ import annotations


class AttrDict(dict):
    """Dictionary with attribute access, used for scenario configurations."""

    __setattr__ = dict.__setitem__
    __delattr__ = dict.__delitem__

    def __getattribute__(self, item):
        if item in self:
            return self[item]
        else:
            return super().__getattribute__(item)

    def copy(self) -> AttrDict:
        return AttrDict(dict.copy(self))
