#!/usr/bin/env python3
"""Certify the embedding over the generated corpus and print a timing summary."""

import asyncio
import os
import sys
import time

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src.instances.generators import build_corpus
from src.runner.queue import CertificationQueue, corpus_report
from src.utils.config import settings
from src.utils.logger import logger


async def main(max_n: int) -> int:
    """Run the certification queue and report."""
    started = time.perf_counter()
    corpus = build_corpus(max_n)
    logger.info(f"Corpus built: {len(corpus)} instances")

    certificates = await CertificationQueue().run(corpus)
    report = corpus_report(certificates, max_n)
    sys.stdout.write(report.render())

    elapsed = time.perf_counter() - started
    logger.info(f"Certification finished in {elapsed:.2f}s")
    if not report.all_passed:
        logger.error(f"{len(report.failures())} instance(s) failed")
        return 1
    return 0


if __name__ == "__main__":
    bound = int(sys.argv[1]) if len(sys.argv) > 1 else settings.corpus_max_n
    sys.exit(asyncio.run(main(bound)))
