# ///////////////////////////////////////////////////////////////////////
#
#                                  APP
#   Entry point of the engine: keeps the log file short, configures the
#   loggers and exits with the status of the dispatched command.
#
# ///////////////////////////////////////////////////////////////////////

import sys
from utilities_navigation import initial_navigation
from global_parameters import LOG_PATH, LOG_MAX_LINES, LOG_LINES_TO_LEAVE
import logging as log
import os

def truncate_log_file(log_path: str = LOG_PATH, max_lines: int = LOG_MAX_LINES, lines_to_leave: int = LOG_LINES_TO_LEAVE):

    if not os.path.exists(log_path):
        return

    with open(log_path, 'r', encoding='utf-8') as file:
        lines = file.readlines()

    if len(lines) > max_lines:
        with open(log_path, 'w', encoding='utf-8') as file:
            file.writelines(lines[-lines_to_leave:])

def conf_log(log_path: str = LOG_PATH, level: int = log.INFO):
    log.basicConfig(
        level=level,
        format='%(asctime)s - %(levelname)s - %(name)s - %(message)s',
        handlers=[
            log.FileHandler(log_path, mode='a', encoding='utf-8'),
            log.StreamHandler(sys.stderr)
        ]
    )

if __name__ == '__main__':
    truncate_log_file()
    conf_log()

    sys.exit(initial_navigation())
