#!/usr/bin/env python3
import os
import sys
import logging
from typing import Optional
from dotenv import load_dotenv
from config.settings import AppConfig
from core.controller import Controller

# Load environment variables from .env file
load_dotenv()


def setup_logging(level: str = "INFO", log_dir: Optional[str] = "logs"):
    """Setup logging with file location and line numbers; stdout stays reserved for results"""
    log_format = '%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(funcName)s() - %(message)s'

    handlers = [logging.StreamHandler(sys.stderr)]
    if log_dir:
        try:
            os.makedirs(log_dir, exist_ok=True)
            handlers.append(logging.FileHandler(os.path.join(log_dir, "habiro_bc.log")))
        except OSError:
            # Read-only working directory: stderr only
            pass

    logging.basicConfig(level=getattr(logging, level.upper()), format=log_format, handlers=handlers)


def main():
    """Main entry point"""
    try:
        config = AppConfig.from_env()
        config.validate()
    except ValueError as e:
        print(f"Invalid configuration: {e}", file=sys.stderr)
        sys.exit(2)

    setup_logging(config.log_level, config.log_dir)
    logger = logging.getLogger(__name__)
    logger.debug(f"Configuration: {config.to_dict()}")

    controller = Controller(config)
    sys.exit(controller.main(sys.argv[1:]))


if __name__ == "__main__":
    main()
