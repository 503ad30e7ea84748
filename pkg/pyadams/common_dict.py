from types import SimpleNamespace
from collections.abc import Mapping


##
class SimpleObject(SimpleNamespace, Mapping):
    """
    A read-only namespace that is also a Mapping.

    Every report and multi-valued result of the engine is one of these, so
    results can be read as `res.verdict` or `res["verdict"]`, iterated in
    insertion order, and rendered deterministically.
    """

    def __init__(self, _drop_nones=False, _readonly_p=True, **kwargs):
        if _drop_nones:
            kwargs = {k: v for k, v in kwargs.items() if v is not None}
        super().__init__(**kwargs)

        super().__setattr__("_readonly_p", _readonly_p)

    def __getitem__(self, name):
        try:
            return getattr(self, name)
        except AttributeError:
            raise KeyError(name)

    def __setattr__(self, name, value):
        if not self._readonly_p:
            super().__setattr__(name, value)
        else:
            raise AttributeError(
                f"Cannot modify attribute '{name}', this namespace is read-only."
            )

    def __setitem__(self, name, value):
        setattr(self, name, value)

    @property
    def __dict__(self):
        return {k: v for k, v in super().__dict__.items() if k != "_readonly_p"}

    def __iter__(self):
        #: Mapping semantics: iterate over keys, like a dict
        yield from self.__dict__.keys()

    def __len__(self):
        return len(self.__dict__)

    def __contains__(self, item):
        return item in self.__dict__

    def keys(self):
        return self.__dict__.keys()

    def items(self):
        return ((key, getattr(self, key)) for key in self.keys())

    def values(self):
        return (getattr(self, key) for key in self.keys())

    def get(self, key, default=None):
        return getattr(self, key, default)

    def __eq__(self, other):
        if not isinstance(other, SimpleObject):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def __repr__(self):
        inner = ", ".join(f"{k}={v!r}" for k, v in self.items())
        return f"simple_obj({inner})"


simple_obj = SimpleObject


def simple_obj_update(obj, **kwargs):
    d = dict(vars(obj))  #: copies the dict, otherwise it will mutate the obj
    d.update(kwargs)

    return simple_obj(**d)


##
def to_plain(obj, *, fallback=str):
    """
    Recursively converts report records into plain dicts and lists.

    Objects that are neither records, mappings, sequences nor JSON scalars are
    passed through `fallback`.
    """
    if isinstance(obj, (SimpleObject, dict)):
        return {str(k): to_plain(v, fallback=fallback) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [to_plain(v, fallback=fallback) for v in obj]
    elif obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    else:
        return fallback(obj)


##
