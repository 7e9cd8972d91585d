import logging
import logging.config


def add_log_level(name, level):

    def logging_method(level):

        def method(self, message, *args, **kws):
            if self.isEnabledFor(level):
                self._log(level, message, args, **kws)  #pylint: disable=protected-access

        return method

    uppercase_name = name.upper()
    logging.addLevelName(level, uppercase_name)
    setattr(logging.Logger, uppercase_name, level)
    setattr(logging.Logger, name, logging_method(level))


# add more fine grained info levels
add_log_level("v", logging.INFO + 3)
add_log_level("vv", logging.INFO + 2)
add_log_level("vvv", logging.INFO + 1)

log = logging.getLogger("twistknot")


def configure_root_logger(level):
    """Route every record to stderr.

    Standard output is reserved for the single result document a command
    prints, so diagnostics of all levels share the stderr stream. Records
    below WARNING are printed bare, warnings and errors carry their level.
    """

    class InfoFilter:  #pylint: disable=too-few-public-methods

        def filter(self, record) -> bool:  #pylint: disable=no-self-use
            return record.levelno < logging.WARNING

    class ProblemFilter:  #pylint: disable=too-few-public-methods

        def filter(self, record) -> bool:  #pylint: disable=no-self-use
            return record.levelno >= logging.WARNING

    logging_config = {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "message_only": {
                "format": "%(message)s"
            },
            "leveled": {
                "format": "%(levelname)s: %(message)s"
            },
        },
        "filters": {
            "info_filter": {
                "()": InfoFilter
            },
            "problem_filter": {
                "()": ProblemFilter
            }
        },
        "handlers": {
            "info": {
                "class": "logging.StreamHandler",
                "formatter": "message_only",
                "filters": ["info_filter"],
                "stream": "ext://sys.stderr"
            },
            "problems": {
                "class": "logging.StreamHandler",
                "formatter": "leveled",
                "filters": ["problem_filter"],
                "stream": "ext://sys.stderr"
            },
        },
        "loggers": {
            "": {
                "handlers": ["info", "problems"],
                "level": level,
                "propagate": True
            }
        }
    }
    logging.config.dictConfig(logging_config)
