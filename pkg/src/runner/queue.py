"""Certification queue: runs the embedding pipeline over a corpus of instances."""

import asyncio
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from ..algebra.action import lift, munn
from ..algebra.congruence import enumerate_congruences
from ..algebra.errors import AlgebraError
from ..algebra.models import Report
from ..algebra.product import embedding_theorem
from ..instances.fileformat import InstanceFile
from ..utils.config import settings
from ..utils.logger import logger


class InstanceCertificate(BaseModel):
    """Outcome of certifying one corpus instance."""

    key: str
    order: int
    congruences: int = Field(0, description="Idempotent pure congruences checked")
    reports: List[Report] = Field(default_factory=list)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(report.all_passed for report in self.reports)

    def failures(self) -> List[str]:
        if self.error is not None:
            return [self.error]
        return [
            f"{report.title}: {check.render()}"
            for report in self.reports
            for check in report.failures()
        ]


def certify_instance(key: str, instance: InstanceFile) -> InstanceCertificate:
    """
    Check the embedding and the class joins for every idempotent pure congruence.

    Args:
        key: Corpus key of the instance
        instance: The instance to certify

    Returns:
        InstanceCertificate; algebra errors are recorded, not raised
    """
    certificate = InstanceCertificate(key=key, order=instance.order)
    try:
        S = instance.semigroup()
        delta = munn(S)
        for rho in enumerate_congruences(S, idempotent_pure=True):
            report = embedding_theorem(S, rho)
            # Joins over idempotent pure classes never fail; lift raises otherwise.
            lift(delta, rho)
            report.add("class-joins-exist", True)
            certificate.reports.append(report)
            certificate.congruences += 1
    except AlgebraError as e:
        logger.error(f"Certification raised {type(e).__name__}: {e}", extra={"instance": key})
        certificate.error = f"{type(e).__name__}: {e}"
    return certificate


class CertificationQueue:
    """
    Fan corpus instances out to worker threads.

    At most `workers` instances are certified at once; results come back
    sorted by corpus key regardless of completion order.
    """

    def __init__(self, workers: Optional[int] = None):
        """
        Initialize the queue.

        Args:
            workers: Concurrency limit (settings.certify_workers by default)
        """
        self.workers = workers or settings.certify_workers
        self._semaphore: Optional[asyncio.Semaphore] = None

    async def _certify(self, key: str, instance: InstanceFile) -> InstanceCertificate:
        async with self._semaphore:
            logger.debug(f"Certifying order {instance.order}", extra={"instance": key})
            return await asyncio.to_thread(certify_instance, key, instance)

    async def run(self, corpus: Sequence[Tuple[str, InstanceFile]]) -> List[InstanceCertificate]:
        """
        Certify every instance of the corpus.

        Returns:
            Certificates sorted by key
        """
        self._semaphore = asyncio.Semaphore(self.workers)
        logger.info(f"Certifying {len(corpus)} instances with {self.workers} workers")
        results = await asyncio.gather(*(self._certify(key, inst) for key, inst in corpus))
        failed = [c.key for c in results if not c.passed]
        if failed:
            logger.warning(f"Certification failed for {failed}")
        return sorted(results, key=lambda c: c.key)


def corpus_report(certificates: Sequence[InstanceCertificate], max_n: int) -> Report:
    """Summarize certificates as one report with a check per instance."""
    report = Report(title=f"certify-all (max order {max_n})")
    total = sum(c.congruences for c in certificates)
    report.info.append(f"instances: {len(certificates)}, idempotent pure congruences: {total}")
    for certificate in certificates:
        failures = certificate.failures()
        report.add(
            certificate.key,
            certificate.passed,
            f"({certificate.congruences} congruences)" if not failures else failures[0],
        )
    return report
