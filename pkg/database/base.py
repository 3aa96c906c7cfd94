from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional
import logging

from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker, Session

from .models import Base, AnalysisRun
from config import DATABASE_URL

logger = logging.getLogger(__name__)


class DatabaseBase(ABC):
    def __init__(self, database_url: str = None):
        self.database_url = database_url or DATABASE_URL
        self.engine = create_engine(self.database_url)

        self.SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=self.engine)
        self.create_tables()

    def create_tables(self):
        """Create the run-history tables if missing."""
        Base.metadata.create_all(bind=self.engine)
        logger.info("Database tables created successfully")

    def get_session(self) -> Session:
        return self.SessionLocal()

    def close(self):
        """Dispose of the engine."""
        if hasattr(self, 'engine') and self.engine:
            self.engine.dispose()
            logger.info("Database connection closed")

    @abstractmethod
    def add_run(self, report: Dict[str, Any]) -> Optional[AnalysisRun]:
        """Store one analysis report with its verdicts."""
        pass

    @abstractmethod
    def get_runs(self, instance: str = None, limit: int = 20) -> List[AnalysisRun]:
        """Most recent runs first, optionally for one instance name."""
        pass

    @abstractmethod
    def get_run(self, run_id: int) -> Optional[AnalysisRun]:
        pass
