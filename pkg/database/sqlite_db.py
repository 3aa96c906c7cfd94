import json
import logging
from typing import Any, Dict, List, Optional

from sqlalchemy.orm import selectinload

from .base import DatabaseBase
from .models import AnalysisRun, VerdictRecord
from utils.logger import log_database_operation

logger = logging.getLogger(__name__)


class SQLiteDatabase(DatabaseBase):
    # Expose models as attributes for testing
    AnalysisRun = AnalysisRun
    VerdictRecord = VerdictRecord

    def add_run(self, report: Dict[str, Any]) -> Optional[AnalysisRun]:
        session = self.get_session()
        try:
            instance = report.get('instance') or {}
            run = AnalysisRun(
                instance=instance.get('name') or 'unnamed',
                family=instance.get('family'),
                params=json.dumps(instance.get('params') or {}, ensure_ascii=False),
                k=report['k'],
                n=report.get('n'),
                group_order=str(report['group_order']),
                degree=str(report['degree']),
                termination=report['termination'],
                report=json.dumps(report, ensure_ascii=False),
            )
            for verdict in report.get('verdicts', []):
                witness = verdict.get('witness')
                run.verdicts.append(VerdictRecord(
                    m=verdict['m'],
                    holds=verdict['holds'],
                    method=verdict.get('method'),
                    witness=json.dumps(witness) if witness is not None else None,
                ))
            session.add(run)
            session.commit()
            # Ensure all attributes are loaded before expunging
            session.refresh(run)
            _ = list(run.verdicts)
            session.expunge_all()
            log_database_operation("insert", AnalysisRun.__tablename__, 1 + len(run.verdicts))
            logger.info(f"Stored analysis run {run.id} for {run.instance}")
            return run

        except Exception as e:
            session.rollback()
            log_database_operation("insert", AnalysisRun.__tablename__, success=False)
            logger.error(f"Error storing analysis run: {e}")
            return None
        finally:
            session.close()

    def get_runs(self, instance: str = None, limit: int = 20) -> List[AnalysisRun]:
        session = self.get_session()
        try:
            query = session.query(AnalysisRun).options(selectinload(AnalysisRun.verdicts))
            if instance:
                query = query.filter(AnalysisRun.instance == instance)
            runs = query.order_by(AnalysisRun.created_at.desc(), AnalysisRun.id.desc()).limit(limit).all()
            session.expunge_all()
            log_database_operation("select", AnalysisRun.__tablename__, len(runs))
            return runs
        finally:
            session.close()

    def get_run(self, run_id: int) -> Optional[AnalysisRun]:
        session = self.get_session()
        try:
            run = (
                session.query(AnalysisRun)
                .options(selectinload(AnalysisRun.verdicts))
                .filter(AnalysisRun.id == run_id)
                .first()
            )
            if run is not None:
                session.expunge_all()
            return run
        finally:
            session.close()
