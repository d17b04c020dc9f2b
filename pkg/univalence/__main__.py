import sys  # pragma: no cover

from univalence.verification_runner import VerificationRunner  # pragma: no cover

verification_runner = VerificationRunner()  # pragma: no cover
sys.exit(verification_runner.run())  # pragma: no cover
