# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

from django.apps import AppConfig


class SoloistConfig(AppConfig):
    name = "soloist"
    verbose_name = "SOLOIST trace checker"

    def ready(self):
        # importing the module registers the built-in reducers
        import soloist.reducers  # noqa: F401
        from soloist.reducer_controller import ReducerController

        ReducerController().check_complete()
