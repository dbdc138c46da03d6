import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from brandrank.engagement import (
    PostSupport,
    SentimentLexicon,
    brand_score,
    brand_scores,
    classify_polarity,
    support_rate,
)
from brandrank.graph_model import Comment, Post

LEX = SentimentLexicon({"good": 1, "great": 1, "bad": -1, "not worth": -1})


def test_classify_examples():
    assert classify_polarity("this is bad", LEX) == -1
    assert classify_polarity("", LEX) == 1
    assert classify_polarity(None, LEX) == 1
    assert classify_polarity("good and great but bad", LEX) == 1
    assert classify_polarity("good, bad", LEX) == 1


def test_classify_whole_word_case_insensitive():
    assert classify_polarity("BAD!", LEX) == -1
    assert classify_polarity("badly goodness", LEX) == 1
    assert classify_polarity("honestly not worth it", LEX) == -1


@given(st.lists(st.sampled_from(["good", "great", "bad", "meh", "phone"]), max_size=12))
def test_classify_ignores_token_order(tokens):
    shuffled = tokens[:]
    random.Random(0).shuffle(shuffled)
    assert classify_polarity(" ".join(tokens), LEX) == classify_polarity(" ".join(shuffled), LEX)


def test_lexicon_validation_and_default():
    with pytest.raises(ValueError):
        SentimentLexicon({})
    with pytest.raises(ValueError):
        SentimentLexicon({"x": 2})
    with pytest.raises(ValueError):
        SentimentLexicon({"X": 1, "x": -1})
    lex = SentimentLexicon.default()
    assert lex.entries["great"] == 1 and lex.entries["laggy"] == -1


def test_lexicon_csv(tmp_path):
    p = tmp_path / "lex.csv"
    p.write_text("term,polarity\nShiny,+1\nugly,-1\n", encoding="utf-8")
    lex = SentimentLexicon.from_csv(p)
    assert dict(lex.entries) == {"shiny": 1, "ugly": -1}
    p.write_text("term,polarity\nugly,2\n", encoding="utf-8")
    with pytest.raises(ValueError, match=":2"):
        SentimentLexicon.from_csv(p)


def _comments(pos, neg, pid="p"):
    out = [Comment(f"+{i}", pid, "u", polarity=1) for i in range(pos)]
    return out + [Comment(f"-{i}", pid, "u", polarity=-1) for i in range(neg)]


def test_support_rate_examples():
    s = support_rate(Post("p", "A", likes=3, favorites=1), _comments(2, 1))
    assert (s.n_pos, s.n_total) == (6, 7)
    assert s.p_support == pytest.approx(6 / 7)
    assert support_rate(Post("p", "A"), []).p_support == 0.0
    assert support_rate(Post("p", "A"), _comments(4, 0)).p_support == 1.0


def test_support_rate_uses_lexicon_only_when_polarity_missing():
    comments = [Comment("c1", "p", "u", text="bad"), Comment("c2", "p", "u", polarity=1, text="bad")]
    s = support_rate(Post("p", "A"), comments, LEX)
    assert (s.n_pos_com, s.n_neg_com) == (1, 1)
    with pytest.raises(ValueError):
        support_rate(Post("p", "A"), comments)
    with pytest.raises(ValueError):
        support_rate(Post("q", "A"), comments, LEX)


def test_brand_score_examples():
    assert brand_score("A", []) == 0.0
    p1, p2 = Post("p1", "A", polarity=1), Post("p2", "A", polarity=-1)
    s1 = PostSupport("p1", 4, 1, 0, 0)  # 0.8
    s2 = PostSupport("p2", 1, 1, 0, 0)  # 0.5
    assert brand_score("A", [(p1, s1), (p2, s2)]) == pytest.approx(0.3)
    full = [(Post(f"p{i}", "A"), PostSupport(f"p{i}", 2, 0, 0, 0)) for i in range(5)]
    assert brand_score("A", full) == 5.0
    with pytest.raises(ValueError):
        brand_score("B", [(p1, s1)])


def test_brand_scores_cover_every_user_and_count_replies():
    posts = [Post("p1", "A", likes=1)]
    comments = [Comment("c1", "p1", "B", polarity=-1),
                Comment("c2", "p1", "C", parent_comment_id="c1", polarity=-1)]
    scores = brand_scores(["A", "B", "Z"], posts, comments)
    assert scores == {"A": pytest.approx(1 / 3), "B": 0.0, "Z": 0.0}


counts = st.integers(0, 1000)


@given(counts, counts, counts, counts)
def test_support_properties(pos, neg, fav, like):
    s = PostSupport("p", pos, neg, fav, like)
    p = s.p_support
    assert 0.0 <= p <= 1.0
    assert PostSupport("p", pos, neg, fav, like + 1).p_support >= p
    assert PostSupport("p", pos, neg, fav + 1, like).p_support >= p
    assert PostSupport("p", pos, neg + 1, fav, like).p_support <= p
