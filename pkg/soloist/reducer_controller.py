# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import logging

from soloist.constants import CORE_KINDS, LEAF_KINDS
from soloist.exceptions import ReducerAlreadyRegistered, ReducerNotRegistered


logger = logging.getLogger(__name__)


class ReducerController:
    """
    Keeps the reducer class registered for each kind of formula. Reducer groups of the engine are built through this
    registry, so a kind without a reducer cannot be checked.
    """

    __singleton_instance = None

    reducer_classes = {}

    def __new__(cls):
        if cls.__singleton_instance is None:
            cls.__singleton_instance = object.__new__(cls)
        return cls.__singleton_instance

    def register(self, kind, reducer_class, force=False):
        """
        Register the reducer class for formulae of `kind`. Registering a second class for the same kind is an error
        unless `force` is True, in which case the new class replaces the old one.
        """
        if kind in self.reducer_classes and not force:
            raise ReducerAlreadyRegistered(
                "Kind {} already has the reducer {}".format(kind.value, self.reducer_classes[kind].__name__)
            )
        self.reducer_classes[kind] = reducer_class
        logger.debug("Registered %s for %s formulae", reducer_class.__name__, kind.value)

    def unregister(self, kind):
        self.reducer_classes.pop(kind, None)

    def reducer_for(self, kind):
        if kind not in self.reducer_classes:
            raise ReducerNotRegistered("No reducer has been registered for {} formulae".format(kind.value))
        return self.reducer_classes[kind]

    def check_complete(self):
        """
        Every core kind that is not a leaf must have a reducer before a formula can be checked.
        """
        missing = sorted(kind.value for kind in CORE_KINDS - LEAF_KINDS if kind not in self.reducer_classes)
        if missing:
            raise ReducerNotRegistered("No reducer has been registered for: {}".format(", ".join(missing)))


def build_reducer(table, formula_id, timestamps, **options):
    reducer_class = ReducerController().reducer_for(table.formula(formula_id).kind)
    return reducer_class(table, formula_id, timestamps, **options)
