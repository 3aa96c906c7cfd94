from datetime import datetime

from sqlalchemy import Boolean, Column, DateTime, ForeignKey, Integer, String, Text, UniqueConstraint
from sqlalchemy.ext.declarative import declarative_base
from sqlalchemy.orm import relationship

Base = declarative_base()


class AnalysisRun(Base):
    __tablename__ = 'analysis_runs'

    id = Column(Integer, primary_key=True)
    instance = Column(String(200), nullable=False)
    family = Column(String(100))  # catalog family, empty for file input
    params = Column(Text)  # JSON object
    k = Column(Integer, nullable=False)
    n = Column(Integer)
    group_order = Column(String(100), nullable=False)  # decimal text, may exceed 64 bits
    degree = Column(String(20), nullable=False)  # "inf", "q" or ">=q"
    termination = Column(String(50), nullable=False)
    created_at = Column(DateTime, default=datetime.utcnow, nullable=False)
    report = Column(Text)  # full JSON report

    verdicts = relationship("VerdictRecord", back_populates="run", cascade="all, delete-orphan",
                            order_by="VerdictRecord.m")


class VerdictRecord(Base):
    __tablename__ = 'verdicts'

    id = Column(Integer, primary_key=True)
    run_id = Column(Integer, ForeignKey('analysis_runs.id'), nullable=False)
    m = Column(Integer, nullable=False)
    holds = Column(Boolean, nullable=False)
    method = Column(String(50))
    witness = Column(Text)  # JSON [[...], [...]]

    run = relationship("AnalysisRun", back_populates="verdicts")

    __table_args__ = (
        UniqueConstraint('run_id', 'm', name='uq_run_m'),
    )
