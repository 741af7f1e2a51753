SECRET_KEY = "eckardt-lattices-cli"

DEBUG = False

INSTALLED_APPS = [
    "eckardt_lattices",
]

DATABASES = {}

USE_TZ = True

ECKARDT_LATTICES = {
    "SEED": 0,
    "GROUP_CAP": 200000,
    "ENUMERATION_BOUND": 2**10,
}

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "simple"},
    },
    "loggers": {
        "eckardt_lattices": {
            "handlers": ["console"],
            "level": "WARNING",
        },
    },
}
