from CoarseLab.Group.Window import BoxShape, Window


def interval(spec, lo, hi):
    """Box-window [lo, hi) on Z."""
    return Window.enumerate(spec, BoxShape(((lo, hi - 1),)))


def ints(spec, values):
    return [spec.from_int(v) for v in values]


def value_of(x):
    """The integer an element of Z stands for."""
    return x.value(0)
