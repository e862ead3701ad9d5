import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tcmbench.embeddings import HashEmbeddingProvider
from tcmbench.errors import ValidationError
from tcmbench.scenarios import (
    METRIC_SUITES,
    AnswerVariant,
    ModelResponse,
    ScenarioExample,
    ScenarioKind,
    evaluate_scenario,
    extract_label,
    extract_option_letter,
    metric_suite_for,
    parse_item_list,
    strip_reasoning_markup,
)


class TestMetricSuites:
    def test_table_is_exact(self):
        suites = {kind.value: list(METRIC_SUITES[kind]) for kind in ScenarioKind}
        generation = ["bleu-1", "bleu-4", "bertscore", "rouge-1", "rouge-2", "rouge-l", "meteor"]
        assert suites["APQ"] == ["accuracy"]
        assert suites["TCMCD"] == ["accuracy"]
        assert suites["TCMEE"] == ["precision", "recall", "f1"]
        assert suites["HFR"] == ["mrr", "p@3", "r@3", "hr@3", "ndcg"]
        assert suites["APR"] == ["mrr", "p@3", "r@3", "hr@3", "ndcg", "accuracy"]
        for kind in ("HCCA", "GCPMI", "DHPE", "TCMKQA", "TCMRC", "TLAW", "ADTG"):
            assert suites[kind] == generation

    def test_total_over_the_enum(self):
        assert len(ScenarioKind) == 12
        for kind in ScenarioKind:
            assert metric_suite_for(kind)


class TestStripReasoningMarkup:
    def test_plain_block_removed(self):
        assert strip_reasoning_markup("<think>琢磨一下</think>答案：B") == "答案：B"

    def test_no_markup_is_identity(self):
        assert strip_reasoning_markup("答案：B") == "答案：B"

    def test_unclosed_block_removed_to_end(self):
        assert strip_reasoning_markup("前言<think>没有闭合") == "前言"

    def test_nested_blocks_removed_to_matching_close(self):
        raw = "头<think>a<think>b</think>c</think>尾"
        assert strip_reasoning_markup(raw) == "头尾"

    @given(st.text(max_size=80))
    def test_idempotent(self, text):
        once = strip_reasoning_markup(text)
        assert strip_reasoning_markup(once) == once

    @given(
        st.lists(
            st.one_of(st.text(max_size=10), st.sampled_from(["<think>", "</think>"])),
            max_size=10,
        )
    )
    def test_idempotent_with_injected_tags(self, parts):
        text = "".join(parts)
        once = strip_reasoning_markup(text)
        assert strip_reasoning_markup(once) == once
        assert "<think>" not in once.lower()  # opened spans never survive


class TestExtractOptionLetter:
    def test_cue_phrase(self):
        assert extract_option_letter("答案：B").letter == "B"

    def test_cue_inside_sentence(self):
        answer = extract_option_letter("正确选项是(C)，因为甘草补气。")
        assert answer.letter == "C"

    def test_parenthesized(self):
        assert extract_option_letter("我认为应当是（D）。").letter == "D"

    def test_standalone_capital(self):
        assert extract_option_letter("E").letter == "E"

    def test_embedded_letter_falls_through_to_last_resort_rule(self):
        # Not standalone (CJK neighbours), so only the first-line scan fires.
        answer = extract_option_letter("维生素C缺乏是另一回事")
        assert answer.letter == "C"
        assert answer.rule == "first-line-letter"

    def test_reasoning_markup_stripped_first(self):
        assert extract_option_letter("<think>A? no...</think>答案：B").letter == "B"

    def test_unparseable_text_fails(self):
        answer = extract_option_letter("本题无法作答")
        assert answer.failed
        assert answer.variant is AnswerVariant.PARSE_FAILURE

    def test_never_returns_other_variants(self):
        for raw in ("答案：B", "(C)", "E", "无", ""):
            answer = extract_option_letter(raw)
            assert answer.variant in (AnswerVariant.OPTION_LETTER, AnswerVariant.PARSE_FAILURE)
            if not answer.failed:
                assert answer.letter in set("ABCDE")


class TestExtractLabel:
    def test_prefixed_label(self):
        assert extract_label("证型：肝郁脾虚").label == "肝郁脾虚"

    def test_multiline_takes_first_line(self):
        raw = "诊断：气血两虚\n依据：面色苍白，脉细弱。"
        assert extract_label(raw).label == "气血两虚"

    def test_whitespace_only_fails(self):
        assert extract_label("   \n  ").failed

    def test_fullwidth_and_punctuation_normalized(self):
        assert extract_label("证型： 肝郁脾虚。").label == "肝郁脾虚"


class TestParseItemList:
    def test_enumeration_comma(self):
        assert parse_item_list("人参、黄芪、甘草").items == ("人参", "黄芪", "甘草")

    def test_numbered_lines_with_dosage(self):
        assert parse_item_list("1. 足三里 15g\n2. 合谷").items == ("足三里", "合谷")

    def test_punctuation_only_fails(self):
        assert parse_item_list("。。。").failed

    def test_duplicates_dropped_first_occurrence_order(self):
        assert parse_item_list("甘草，人参，甘草，黄芪").items == ("甘草", "人参", "黄芪")

    def test_entity_variant(self):
        assert parse_item_list("人参、甘草", ranked=False).variant is AnswerVariant.ENTITY_SET

    @given(st.text(max_size=80))
    def test_no_duplicates_or_empties(self, raw):
        answer = parse_item_list(raw)
        if not answer.failed:
            assert len(set(answer.items)) == len(answer.items)
            assert all(answer.items)

    @given(st.lists(st.sampled_from(["人参", "黄芪", "甘草", "当归", "白术"]), min_size=1, max_size=8))
    def test_survivor_order_is_first_occurrence(self, items):
        answer = parse_item_list("、".join(items))
        expected = list(dict.fromkeys(items))
        assert list(answer.items) == expected


def _apq(item_id, gold="A"):
    return ScenarioExample(
        id=item_id,
        kind=ScenarioKind.APQ,
        question="选一个",
        reference=gold,
        options={"A": "人参", "B": "甘草", "C": "黄芪"},
    )


class TestEvaluateScenario:
    def test_apq_half_right(self):
        items = [
            (_apq("q1", "A"), ModelResponse("A")),
            (_apq("q2", "C"), ModelResponse("B")),
        ]
        report = evaluate_scenario(ScenarioKind.APQ, items)
        assert report.metrics == {"accuracy": 0.5}
        assert report.parse_failure_rate == 0.0

    def test_hfr_single_item_hand_values(self):
        example = ScenarioExample(
            id="h1",
            kind=ScenarioKind.HFR,
            question="推荐",
            reference="人参",
            gold_items=("人参",),
        )
        report = evaluate_scenario(ScenarioKind.HFR, [(example, ModelResponse("甘草、人参"))])
        assert report.metrics["mrr"] == pytest.approx(0.5)
        assert report.metrics["hr@3"] == 1.0
        assert report.metrics["ndcg"] == pytest.approx(0.6309, abs=1e-4)

    def test_all_parse_failures_zero_suite(self):
        items = [(_apq("q1"), ModelResponse("无法作答")), (_apq("q2"), ModelResponse("不知道"))]
        report = evaluate_scenario(ScenarioKind.APQ, items)
        assert report.metrics == {"accuracy": 0.0}
        assert report.parse_failure_rate == 1.0

    def test_mixed_kinds_rejected(self):
        wrong = ScenarioExample(
            id="x", kind=ScenarioKind.TCMCD, question="辨证", reference="肾阳虚"
        )
        with pytest.raises(ValidationError):
            evaluate_scenario(ScenarioKind.APQ, [(wrong, ModelResponse("A"))])

    def test_generation_requires_embedder(self):
        example = ScenarioExample(
            id="g1", kind=ScenarioKind.TCMKQA, question="问", reference="人参补气"
        )
        with pytest.raises(ValidationError, match="embedding provider"):
            evaluate_scenario(ScenarioKind.TCMKQA, [(example, ModelResponse("人参补气"))])

    def test_gold_fed_back_scores_perfectly(self):
        embedder = HashEmbeddingProvider(dim=16)

        apq = [(_apq("q1", "B"), ModelResponse("答案：B"))]
        assert evaluate_scenario(ScenarioKind.APQ, apq).metrics["accuracy"] == 1.0

        tcmcd_example = ScenarioExample(
            id="d1", kind=ScenarioKind.TCMCD, question="辨证", reference="肝郁脾虚"
        )
        report = evaluate_scenario(
            ScenarioKind.TCMCD, [(tcmcd_example, ModelResponse("证型：肝郁脾虚"))]
        )
        assert report.metrics["accuracy"] == 1.0

        entities = ("人参", "黄芪", "甘草")
        tcmee_example = ScenarioExample(
            id="e1",
            kind=ScenarioKind.TCMEE,
            question="抽取",
            reference="、".join(entities),
            gold_items=entities,
        )
        report = evaluate_scenario(
            ScenarioKind.TCMEE, [(tcmee_example, ModelResponse("、".join(entities)))]
        )
        assert report.metrics == {"precision": 1.0, "recall": 1.0, "f1": 1.0}

        apr_example = ScenarioExample(
            id="a1",
            kind=ScenarioKind.APR,
            question="选穴",
            reference="足三里、合谷",
            gold_items=("足三里", "合谷"),
        )
        report = evaluate_scenario(
            ScenarioKind.APR, [(apr_example, ModelResponse("足三里、合谷"))]
        )
        assert report.metrics["mrr"] == 1.0
        assert report.metrics["accuracy"] == 1.0
        assert report.metrics["ndcg"] == 1.0

        gen_example = ScenarioExample(
            id="k1", kind=ScenarioKind.TCMKQA, question="功效", reference="人参大补元气。"
        )
        report = evaluate_scenario(
            ScenarioKind.TCMKQA, [(gen_example, ModelResponse("人参大补元气。"))], embedder
        )
        assert report.metrics["rouge-1"] == 1.0
        assert report.metrics["bleu-1"] == 1.0
        assert report.metrics["bertscore"] == pytest.approx(1.0, abs=1e-9)
        assert report.parse_failure_rate == 0.0

    def test_tcmcd_width_and_punctuation_insensitive_exact_match(self):
        example = ScenarioExample(
            id="d2", kind=ScenarioKind.TCMCD, question="辨证", reference="肝郁　脾虚"
        )
        report = evaluate_scenario(
            ScenarioKind.TCMCD, [(example, ModelResponse("证型：肝郁脾虚。"))]
        )
        assert report.metrics["accuracy"] == 1.0

    def test_tcmcd_near_miss_gets_no_partial_credit(self):
        example = ScenarioExample(
            id="d3", kind=ScenarioKind.TCMCD, question="辨证", reference="肝郁脾虚"
        )
        report = evaluate_scenario(
            ScenarioKind.TCMCD, [(example, ModelResponse("证型：肝郁气滞"))]
        )
        assert report.metrics["accuracy"] == 0.0

    def test_per_item_rows_track_rules(self):
        items = [(_apq("q1", "A"), ModelResponse("答案：A"))]
        report = evaluate_scenario(ScenarioKind.APQ, items)
        assert report.per_item[0].rule == "cue-phrase"
        assert report.per_item[0].parsed


def test_hash_embedder_alignment_and_determinism():
    provider = HashEmbeddingProvider(dim=8)
    (tokens_a, rows_a), (tokens_b, rows_b) = provider.embed(["人参补气", "人参补气"])
    assert tokens_a == tokens_b == ["人", "参", "补", "气"]
    assert np.array_equal(rows_a, rows_b)
    assert rows_a.shape == (4, 8)
