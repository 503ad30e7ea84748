import json
from fractions import Fraction

from sympy import Rational

from pyadams.common_dict import SimpleObject, to_plain
from pyadams.common_errors import InputError
from pyadams.common_files import open_file


##
def scalar_json(obj):
    """
    Renders exact rationals (sympy `Rational`, `fractions.Fraction`) as "a/b"
    strings, or as plain "a" when the denominator is one.
    """
    if isinstance(obj, Rational):
        numerator, denominator = obj.p, obj.q
    elif isinstance(obj, Fraction):
        numerator, denominator = obj.numerator, obj.denominator
    else:
        return None

    numerator, denominator = int(numerator), int(denominator)
    if denominator == 1:
        return f"{numerator}"
    return f"{numerator}/{denominator}"


class JSONEncoderWithFallback(json.JSONEncoder):
    """
    A JSON encoder that knows about report records and exact scalars, and
    falls back to `fallback_function` for everything else.

    Parameters
    ----------
    fallback_function : callable, optional
        Applied to objects that are neither records nor exact rationals.
        (default is `str`)
    """

    def __init__(self, *args, fallback_function=str, **kwargs):
        super().__init__(*args, **kwargs)
        self.fallback_function = fallback_function

    def default(self, obj):
        if isinstance(obj, SimpleObject):
            return to_plain(obj, fallback=self.default)

        rendered = scalar_json(obj)
        if rendered is not None:
            return rendered

        try:
            return super().default(obj)
        except TypeError:
            return self.fallback_function(obj)


def dumps(
    obj,
    indent=2,
    **kwargs,
):
    encoder = JSONEncoderWithFallback(
        indent=indent,
        **kwargs,
    )
    return encoder.encode(obj)


def json_save(
    obj,
    *,
    file,
    indent=2,
    exists="overwrite",
    **kwargs,
):
    json_data = dumps(obj, indent=indent, **kwargs) + "\n"

    if isinstance(file, str):
        with open_file(
            file,
            mode="w",
            exists=exists,
            mkdir_p=True,
            encoding="utf-8",
        ) as f:
            f.write(json_data)
    else:
        #: If file is a file-like object, just write to it
        file.write(json_data)


##
def json_load(path):
    with open_file(path, "r", encoding="utf-8") as f:
        text = f.read()

    return json_loads(text, file=path)


def json_loads(text, *, file=None):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(
            f"invalid JSON: {e.msg}",
            path=f"{e.lineno}:{e.colno}",
            file=file,
        )


##
