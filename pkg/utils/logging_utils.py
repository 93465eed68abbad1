import sys
import io
import logging
from pathlib import Path
from typing import Union

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_FILE = 'collab.log'


def setup_logging(log_level: str = "INFO", log_dir: Union[str, Path] = 'output/logs') -> logging.Logger:
    """Configure le système de logging (fichier <log_dir>/collab.log et console)"""
    log_dir = Path(log_dir)
    log_dir.mkdir(parents=True, exist_ok=True)

    # Force UTF-8 sur la console Windows (évite UnicodeEncodeError avec cp1252)
    if isinstance(sys.stdout, io.TextIOWrapper):
        sys.stdout.reconfigure(encoding='utf-8')
    if isinstance(sys.stderr, io.TextIOWrapper):
        sys.stderr.reconfigure(encoding='utf-8')

    numeric_level = getattr(logging, log_level.upper(), logging.INFO)

    logging.basicConfig(
        level=numeric_level,
        format=LOG_FORMAT,
        handlers=[
            logging.FileHandler(log_dir / LOG_FILE, encoding='utf-8'),
            logging.StreamHandler()
        ],
        force=True
    )

    return logging.getLogger(__name__)
