import sys
from logging.config import dictConfig
from app.core.config import APP_ENV

LOG_LEVEL = "DEBUG" if APP_ENV == "development" else "INFO"

RUN_FORMAT = (
    "%(asctime)s | RUN | "
    "%(method)s on %(problem)s | h=%(h)s | "
    "steps=%(steps)s | rhs=%(rhs_evals)s | "
    "iters=%(iters)s (%(iters_per_step)s/step, capped=%(capped)s) | "
    "%(wall_ms)sms"
)


def setup_logging():
    dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,

            # -----------------
            # FORMATTERS
            # -----------------
            "formatters": {
                "default": {
                    "format": (
                        "%(asctime)s | %(levelname)s | "
                        "%(name)s | %(message)s"
                    ),
                },
                "run": {
                    "format": RUN_FORMAT,
                },
            },

            # -----------------
            # FILTERS
            # -----------------
            "filters": {
                "run_fields": {"()": "app.middleware.run_logging.RunFieldsFilter"},
            },

            # -----------------
            # HANDLERS
            # stdout is reserved for the CLI summary line
            # -----------------
            "handlers": {
                "console": {
                    "class": "logging.StreamHandler",
                    "stream": sys.stderr,
                    "formatter": "default",
                },
                "run_console": {
                    "class": "logging.StreamHandler",
                    "stream": sys.stderr,
                    "formatter": "run",
                    "filters": ["run_fields"],
                },
            },

            # -----------------
            # LOGGERS
            # -----------------
            "loggers": {
                # Used by app.middleware.run_logging
                "run": {
                    "handlers": ["run_console"],
                    "level": "INFO",
                    "propagate": False,
                },
            },

            # -----------------
            # ROOT LOGGER
            # -----------------
            "root": {
                "level": LOG_LEVEL,
                "handlers": ["console"],
            },
        }
    )
