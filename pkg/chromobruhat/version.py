"""
Versions-Informationen
"""
import logging
import os

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def get_version():
    """Liest Version aus VERSION Datei"""
    version_file = os.path.join(os.path.dirname(__file__), '..', 'VERSION')
    try:
        with open(version_file, 'r') as f:
            return f.read().strip()
    except FileNotFoundError:
        return "1.0.0"  # Fallback
    except Exception as e:
        logger.warning(f"Error reading version: {e}")
        return "unknown"
