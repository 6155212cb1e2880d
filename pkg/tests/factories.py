"""Deterministic random sample factories used across the test suite."""

from __future__ import annotations

import random

from taskmix.format import DATASETS, LANGUAGES, LabelEntityPair, Sample

TASK_WORDS = {
    "SCNM": "NER",
    "SCPOS-RW": "RW",
    "SCPOS-AdjN": "POS",
    "SCPOS-Adj": "ADJ",
    "SCPOS-N": "POS",
    "TCREE": "TCREE",
    "TCONER": "NER",
}

TEXT_LABELS = {
    "SCNM": {
        "ja": ["自然", "社会", "科学", "文化"],
        "en": ["nature", "society", "science", "culture"],
        "zh": ["自然", "社会", "科学", "文化"],
    },
    "TCREE": {
        "ja": ["ポジティブ", "経済", "スポーツ"],
        "en": ["positive", "economy", "sports"],
        "zh": ["积极", "经济", "体育"],
    },
    "TCONER": {
        "ja": ["歴史", "金融", "生物"],
        "en": ["history", "finance", "biology"],
        "zh": ["历史", "金融", "生物"],
    },
}
_SENTIMENT = {
    "ja": ["ポジティブ", "ネガティブ"],
    "en": ["positive", "negative"],
    "zh": ["积极", "消极"],
}
for _d in ("SCPOS-RW", "SCPOS-AdjN", "SCPOS-Adj", "SCPOS-N"):
    TEXT_LABELS[_d] = _SENTIMENT

WORD_LABELS = {
    "SCNM": {
        "ja": ["動物名", "国名", "人名", "地名"],
        "en": ["Animal Name", "Nation", "Person Name", "Location Name"],
        "zh": ["动物名", "国名", "人名", "地名"],
    },
    "SCPOS-RW": {"ja": ["関連語"], "en": ["related word"], "zh": ["相关词"]},
    "SCPOS-AdjN": {
        "ja": ["形容詞", "名詞"],
        "en": ["adjective", "noun"],
        "zh": ["形容词", "名词"],
    },
    "SCPOS-Adj": {"ja": ["形容詞"], "en": ["adjective"], "zh": ["形容词"]},
    "SCPOS-N": {"ja": ["名詞"], "en": ["noun"], "zh": ["名词"]},
    "TCREE": {
        "ja": ["関係", "イベント"],
        "en": ["relation", "event"],
        "zh": ["关系", "事件"],
    },
    "TCONER": {
        "ja": ["人物", "場所", "組織"],
        "en": ["person", "place", "organization"],
        "zh": ["人物", "地点", "组织"],
    },
}

EN_WORDS = (
    "pandas mammals china nature movie great director story music river "
    "mountain spring friends company economy match player book city train "
    "garden winter coffee market bridge window teacher doctor island forest"
).split()

JA_TOKENS = [
    "パンダ", "中国", "映画", "素晴らしい", "とても", "会社", "経済", "試合",
    "選手", "音楽", "本", "山", "川", "春", "雨", "友達", "東京", "犬", "猫",
    "先生", "公園", "電車", "海", "森",
]

ZH_TOKENS = [
    "大熊猫", "中国", "电影", "非常", "好看", "公司", "经济", "比赛", "选手",
    "音乐", "北京", "上海", "朋友", "春天", "下雨", "高山", "河流", "老师",
    "公园", "火车", "大海", "森林",
]


def make_text(rng: random.Random, language: str) -> tuple[str, list[str]]:
    """A text plus the token inventory entities can be drawn from."""
    if language == "en":
        words = rng.sample(EN_WORDS, rng.randint(5, 10))
        return " ".join(words), words
    tokens = JA_TOKENS if language == "ja" else ZH_TOKENS
    picked = rng.sample(tokens, rng.randint(4, 8))
    return "".join(picked), picked


def make_sample(
    rng: random.Random,
    dataset: str | None = None,
    language: str | None = None,
    ident: str | None = None,
    max_pairs: int = 4,
) -> Sample:
    """One valid, grounded sample with realistic label inventories."""
    dataset = dataset or rng.choice(DATASETS)
    language = language or rng.choice(LANGUAGES)
    text, tokens = make_text(rng, language)
    n_pairs = rng.randint(0, min(max_pairs, len(tokens)))
    entities = rng.sample(tokens, n_pairs)
    labels = WORD_LABELS[dataset][language]
    pairs = [LabelEntityPair(rng.choice(labels), entity) for entity in entities]
    return Sample(
        id=ident or f"{dataset}-{language}-{rng.randrange(10**9)}",
        dataset=dataset,
        language=language,
        text=text,
        task_word=TASK_WORDS[dataset],
        text_label=rng.choice(TEXT_LABELS[dataset][language]),
        pairs=pairs,
    )


def make_corpus(seed: int, n: int, dataset: str | None = None,
                language: str | None = None) -> list[Sample]:
    rng = random.Random(seed)
    return [
        make_sample(rng, dataset, language, ident=f"s{i:05d}") for i in range(n)
    ]
