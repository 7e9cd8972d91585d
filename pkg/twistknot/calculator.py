from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .config import ApiConfigSource, Config
from .export import export_affine_table
from .families import ExampleName, FamilyName, Fixture, example, examples, family
from .gauss import TwistedGaussCode, parse_gauss_code
from .invariants import Bounds, bounds, invariant_report
from .log import log
from .search import Certificate, CountedSet, SearchOutcome, certify, random_code, run_search

CodeLike = Union[str, TwistedGaussCode]


class Calculator:
    """Entry point for computing invariants and bounds of twisted knot codes.

    Setters return the calculator so calls can be chained::

        Calculator().node_cap(10000).free_budget(4).certify("O1+ O2+ * U1+ * U2+")

    Options left unset fall back to ``TKC_*`` environment variables, then to
    the configuration file, then to the defaults.
    """

    def __init__(self):
        self._api_config = ApiConfigSource({
            "config_path": None,
            "node_cap": None,
            "free_budget": None,
            "max_counted": None,
            "seed": None,
            "allow_add_moves": None,
            "format": None,
        })

    # -------------------------------------------------------------------------#
    #      _    ____ ___                                                       #
    #     / \  |  _ \_ _|                                                      #
    #    / _ \ | |_) | |                                                       #
    #   / ___ \|  __/| |                                                       #
    #  /_/   \_\_|  |___|                                                      #
    #                                                                          #
    # -------------------------------------------------------------------------#

    def config(self, path: Optional[Union[str, Path]] = None, clear: bool = False) -> Union["Calculator", Path]:
        """Set path of the YAML configuration file.

        Returns:
            Path: The config file path, if given path is None.
            Calculator: The Calculator instance, if given path is not None.
        """
        assert isinstance(path, (str, Path, type(None)))
        assert isinstance(clear, bool)

        if isinstance(path, str):
            path = Path(path)
        return self._property("config_path", path, clear)

    def node_cap(self, value: Optional[int] = None, clear: bool = False) -> Union["Calculator", int, None]:
        assert value is None or (isinstance(value, int) and value >= 1)
        assert isinstance(clear, bool)

        return self._property("node_cap", value, clear)

    def free_budget(self, value: Optional[int] = None, clear: bool = False) -> Union["Calculator", int, None]:
        assert value is None or (isinstance(value, int) and value >= 0)
        assert isinstance(clear, bool)

        return self._property("free_budget", value, clear)

    def max_counted(self, value: Optional[int] = None, clear: bool = False) -> Union["Calculator", int, None]:
        assert value is None or (isinstance(value, int) and value >= 0)
        assert isinstance(clear, bool)

        return self._property("max_counted", value, clear)

    def seed(self, value: Optional[int] = None, clear: bool = False) -> Union["Calculator", int, None]:
        assert isinstance(value, (int, type(None)))
        assert isinstance(clear, bool)

        return self._property("seed", value, clear)

    def allow_add_moves(self, value: Optional[bool] = None, clear: bool = False) -> Union["Calculator", bool, None]:
        assert isinstance(value, (bool, type(None)))
        assert isinstance(clear, bool)

        return self._property("allow_add_moves", value, clear)

    def output_format(self, value: Optional[str] = None, clear: bool = False) -> Union["Calculator", str, None]:
        assert isinstance(value, (str, type(None)))
        assert isinstance(clear, bool)

        return self._property("format", value, clear)

    def configuration(self) -> Config:
        """Resolve the layered configuration.

        Raises:
            ConfigError: If any source holds an invalid value.
        """
        return Config(self._api_config, use_envs=True)

    def parse(self, code: CodeLike) -> TwistedGaussCode:
        return code if isinstance(code, TwistedGaussCode) else parse_gauss_code(code)

    def invariants(self, code: CodeLike, export_path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
        code = self.parse(code)
        report = invariant_report(code)
        if export_path is not None:
            export_affine_table(code, export_path)
        return report

    def bounds(self, code: CodeLike) -> Bounds:
        return bounds(self.parse(code))

    def search(self,
               code: CodeLike,
               counted_set: Union[str, CountedSet] = CountedSet.ARCSHIFT,
               max_counted: Optional[int] = None) -> SearchOutcome:
        code = self.parse(code)
        search_config = self.configuration().search_config(CountedSet(counted_set), max_counted)
        log.v("Searching with %s moves up to depth %d", search_config.counted_set.value, search_config.max_counted)
        return run_search(code, search_config)

    def certify(self, code: CodeLike, max_counted: Optional[int] = None) -> Certificate:
        code = self.parse(code)
        return certify(code, self.configuration().search_config(max_counted=max_counted))

    def family(self, name: Union[str, FamilyName], n: int) -> Fixture:
        return family(FamilyName(name), n)

    def example(self, name: Union[str, ExampleName]) -> Fixture:
        return example(ExampleName(name))

    def examples(self) -> List[Fixture]:
        return examples()

    def random(self, n_chords: int, n_bars: int) -> TwistedGaussCode:
        return random_code(n_chords, n_bars, self.configuration().search_config().seed)

    # -------------------------------------------------------------------------#
    #      __     _    ____ ___                                                #
    #     / /    / \  |  _ \_ _|                                               #
    #    / /    / _ \ | |_) | |                                                #
    #   / /    / ___ \|  __/| |                                                #
    #  /_/    /_/   \_\_|  |___|                                               #
    #                                                                          #
    # -------------------------------------------------------------------------#

    def _property(self, name: str, value: Any, clear: bool):
        if clear:
            self._api_config.set(name, None)
            return self
        if value is None:
            return self._api_config.get(name)
        self._api_config.set(name, value)
        return self
