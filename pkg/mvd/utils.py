import json
import logging
import sys
from datetime import datetime
from colorama import Fore, Style, init
from typing import List, Dict, Any

# Initialize colorama for cross-platform colored output
init()

class Colors:
    """Color constants for terminal output"""
    HEADER = Fore.MAGENTA
    INFO = Fore.CYAN
    SUCCESS = Fore.GREEN
    WARNING = Fore.YELLOW
    ERROR = Fore.RED
    RESET = Style.RESET_ALL
    BOLD = Style.BRIGHT

class TextFormatter:
    """Format text with colors and effects"""

    @staticmethod
    def header(text: str) -> str:
        return f"{Colors.HEADER}{Colors.BOLD}{text}{Colors.RESET}"

    @staticmethod
    def success(text: str) -> str:
        return f"{Colors.SUCCESS}{text}{Colors.RESET}"

    @staticmethod
    def warning(text: str) -> str:
        return f"{Colors.WARNING}{text}{Colors.RESET}"

    @staticmethod
    def error(text: str) -> str:
        return f"{Colors.ERROR}{text}{Colors.RESET}"

class ColorFormatter(logging.Formatter):
    """Logging formatter that colors the level name"""

    LEVEL_COLORS = {
        logging.DEBUG: Fore.WHITE,
        logging.INFO: Colors.INFO,
        logging.WARNING: Colors.WARNING,
        logging.ERROR: Colors.ERROR,
        logging.CRITICAL: Colors.ERROR + Colors.BOLD,
    }

    def __init__(self, use_color: bool = True):
        super().__init__("[%(asctime)s] %(levelname)s %(name)s: %(message)s",
                         datefmt="%Y-%m-%d %H:%M:%S")
        self.use_color = use_color

    def format(self, record: logging.LogRecord) -> str:
        message = super().format(record)
        if not self.use_color:
            return message
        color = self.LEVEL_COLORS.get(record.levelno, "")
        return message.replace(record.levelname, f"{color}{record.levelname}{Colors.RESET}", 1)

def configure_logging(level: str = "WARNING", stream=None) -> logging.Logger:
    """Attach a colored stderr handler to the package logger"""
    stream = stream or sys.stderr
    logger = logging.getLogger("mvd")

    # Replace handlers from a previous call (tests invoke the CLI repeatedly)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    handler = logging.StreamHandler(stream)
    handler.setFormatter(ColorFormatter(use_color=hasattr(stream, "isatty") and stream.isatty()))
    logger.addHandler(handler)
    logger.setLevel(level.upper())
    logger.propagate = False
    return logger

def dump_json(obj: Any) -> str:
    """Stable, key-sorted JSON for every machine-readable output"""
    return json.dumps(obj, sort_keys=True, indent=2)

class EventLog:
    """Record solver and verifier events for debugging and replay"""

    def __init__(self, enabled: bool = False):
        self.enabled = enabled
        self.events: List[Dict[str, Any]] = []

    def log(self, event_type: str, data: Any):
        if not self.enabled:
            return

        self.events.append({
            'timestamp': datetime.now().isoformat(),
            'type': event_type,
            'data': data
        })

    def save(self, filename: str):
        if not self.events:
            return

        with open(filename, 'w') as f:
            json.dump(self.events, f, indent=2)
