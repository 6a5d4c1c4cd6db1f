import logging
import os


class SuppressBrokenPipe(logging.Filter):
    """Drops broken-pipe noise when command output is piped into head or a pager."""

    def filter(self, record):
        return not ('Broken pipe' in record.getMessage())


def build_logging_config(log_dir, level='INFO'):
    """
    Builds the dictConfig used by settings.LOGGING. The file handler keeps the
    process name so records written by search workers can be told apart.
    """
    return {
        'version': 1,
        'disable_existing_loggers': False,
        'filters': {
            'suppress_broken_pipe': {
                '()': SuppressBrokenPipe,
            },
        },
        'handlers': {
            'file': {
                'level': 'DEBUG',
                'class': 'logging.FileHandler',
                'filename': os.path.join(log_dir, 'doodles.log'),
                'formatter': 'verbose',
            },
            'console': {
                'level': level,
                'class': 'logging.StreamHandler',
                'filters': ['suppress_broken_pipe'],
                'formatter': 'simple',
            },
        },
        'formatters': {
            'verbose': {
                'format': '%(asctime)s [%(levelname)s:%(processName)s:%(name)s] %(message)s',
            },
            'simple': {
                'format': '%(levelname)s: %(message)s',
            },
        },
        'loggers': {
            'doodles': {
                'handlers': ['file', 'console'],
                'level': 'DEBUG',
                'propagate': False,
            },
            'django': {
                'handlers': ['file', 'console'],
                'level': 'INFO',
                'propagate': True,
            },
        },
    }
