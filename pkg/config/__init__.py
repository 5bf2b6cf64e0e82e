from .settings import AppConfig, MultiSettings, MZVSettings, OutputSettings, QSMSettings, SCHEMA_VERSION

__all__ = ['AppConfig', 'QSMSettings', 'MultiSettings', 'MZVSettings', 'OutputSettings', 'SCHEMA_VERSION']
