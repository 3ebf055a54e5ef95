import os

from django.apps import AppConfig
from django.conf import settings

MODULE_NAME = "bms_decoder"

DEFAULT_CFG = {
    "default_order": "lex",
    "default_format": "table",
    "max_field_order": 2 ** 20,
    "sweep_trials": 500,
    "uniqueness_space_limit": 10 ** 7,
    "seed": None,
    "golden_dir": None,
}


class BmsDecoderConfig(AppConfig):
    name = MODULE_NAME

    default_order = None
    default_format = None
    max_field_order = None
    sweep_trials = None
    uniqueness_space_limit = None
    seed = None
    golden_dir = None

    @classmethod
    def _configure(cls, cfg):
        BmsDecoderConfig.default_order = cfg["default_order"]
        BmsDecoderConfig.default_format = cfg["default_format"]
        BmsDecoderConfig.max_field_order = cfg["max_field_order"]
        BmsDecoderConfig.sweep_trials = cfg["sweep_trials"]
        BmsDecoderConfig.uniqueness_space_limit = cfg["uniqueness_space_limit"]
        BmsDecoderConfig.seed = cfg["seed"]
        BmsDecoderConfig.golden_dir = cfg["golden_dir"] or os.path.join(os.path.dirname(__file__), "golden")

    @classmethod
    def effective_config(cls):
        cfg = dict(DEFAULT_CFG)
        cfg.update(getattr(settings, "BMS_DECODER", None) or {})
        seed = os.environ.get("BMS_SEED")
        if seed:
            cfg["seed"] = int(seed)
        return cfg

    def ready(self):
        self._configure(self.effective_config())
