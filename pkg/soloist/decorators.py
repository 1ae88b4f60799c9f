# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

from soloist.reducer_controller import ReducerController


def register_reducer(*kinds, force=False):
    """
    Register a reducer class for one or more formula kinds. The class is returned unchanged so it can still be used
    directly:

    @register_reducer(FormulaKind.NOT)
    class NegationReducer(Reducer):
        def finalize(self, values):
            ...

    Pass force=True to replace a reducer that is already registered, e.g. to swap in an instrumented one.
    """

    def decorator(reducer_class):
        for kind in kinds:
            ReducerController().register(kind, reducer_class, force=force)
        return reducer_class

    return decorator
