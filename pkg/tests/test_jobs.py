import pytest

from algebroids.errors import ParseError
from algebroids.jobs import (
    BaseJob,
    JobFactory,
    JobOptions,
    JobStage,
    OutputFormat,
    ProgressManager,
    Verb,
    progress_manager,
)
from algebroids.jobs.VerifyJob import VerifyJob


def _run(verb, **kwargs):
    stages = []
    job = JobFactory.get_job(verb, JobOptions(**kwargs), lambda stage, percent, message: stages.append((stage, percent)))
    return job.run(), stages


@pytest.mark.parametrize("verb", list(Verb))
def test_factory_covers_every_verb(verb):
    job = JobFactory.get_job(verb, JobOptions())
    assert isinstance(job, BaseJob)
    assert job.verb == verb


def test_factory_accepts_verb_text():
    assert isinstance(JobFactory.get_job("verify", JobOptions()), VerifyJob)


def test_progress_stages_in_order():
    report, stages = _run(Verb.VERIFY, inputs=['so3'])
    assert [stage for stage, _ in stages] == ["loading", "computing", "reporting", "complete"]
    assert [percent for _, percent in stages] == [10, 40, 90, 100]
    assert report.verdict
    assert report.lines[-1] == "verdict: true"


def test_verify_lines():
    report, _ = _run(Verb.VERIFY, inputs=['so3', 'h3'])
    assert report.lines[:2] == ["h3: structure equations: OK", "so3: structure equations: OK"]


def test_parallel_instances_merge_by_name():
    job = JobFactory.get_job(Verb.VERIFY, JobOptions(jobs=3))
    merged = job._map_instances(lambda k: k * k, {"c": 3, "a": 1, "b": 2})
    assert list(merged.items()) == [("a", 1), ("b", 4), ("c", 9)]


def test_unknown_input_is_a_parse_error():
    with pytest.raises(ParseError):
        _run(Verb.VERIFY, inputs=['no-such-algebroid'])


def test_missing_flag_is_a_parse_error():
    with pytest.raises(ParseError):
        _run(Verb.POISSON_CHECK, inputs=['so3'])


def test_sphere_rank_verdict():
    report, _ = _run(Verb.RANK, n=[1, 2], points=4, seed=5, jobs=2)
    assert report.verdict
    assert set(report.data) == {'n=1', 'n=2'}


def test_graph_check_runs_catalogue_triples():
    report, _ = _run(Verb.GRAPH_CHECK)
    assert report.verdict
    assert report.data['abelian4-doubled']['expected'] is False


def test_json_rendering():
    report, _ = _run(Verb.VERIFY, inputs=['so3'])
    text = report.render(OutputFormat.JSON)
    assert '"verb": "verify"' in text
    assert '"verdict": true' in text


def test_progress_manager_is_a_singleton():
    assert ProgressManager() is progress_manager
    state = progress_manager.create_task("t1")
    progress_manager.update("t1", JobStage.COMPUTING, 40, "working")
    assert progress_manager.get("t1").percent == 40
    progress_manager.fail("t1", "boom")
    assert state.stage == JobStage.ERROR and state.percent == 40
    progress_manager.remove("t1")
    assert progress_manager.get("t1") is None
