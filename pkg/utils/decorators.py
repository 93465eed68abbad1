from functools import wraps
import logging
import time

from core.errors import EXIT_FAILURE, EXIT_OK, CollabError

logger: logging.Logger = logging.getLogger(__name__)


def safe_run(func):
    """
    Décorateur pour gérer proprement les erreurs et interruptions

    Convertit les exceptions en codes de sortie : 0 succès, 2 configuration,
    3 convergence, 4 entrées/sorties, 1 sinon.
    """
    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            result = func(*args, **kwargs)
            return EXIT_OK if result is None else int(result)
        except KeyboardInterrupt:
            logger.warning("Exécution interrompue par l'utilisateur")
            print("\nExécution interrompue par l'utilisateur")
            return EXIT_FAILURE
        except CollabError as e:
            logger.error(f"{type(e).__name__} : {e}", exc_info=True)
            print(f"\nErreur ({type(e).__name__}) : {e}")
            print("Consultez le log pour plus de détails")
            return e.exit_code
        except Exception as e:
            logger.error(f"Erreur fatale : {e}", exc_info=True)
            print(f"\nErreur : {e}")
            print("Consultez le log pour plus de détails")
            return EXIT_FAILURE
    return wrapper


def timed(func):
    """Décorateur pour mesurer la durée d'exécution d'une fonction"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        start: float = time.perf_counter()
        result = func(*args, **kwargs)
        duration: float = time.perf_counter() - start
        logger.info(f"Durée de '{func.__name__}' : {duration:.2f}s")
        return result
    return wrapper
