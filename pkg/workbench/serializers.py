"""Stable ``--json`` schemas of the management commands.

Big integers stay exact JSON numbers; the ``digits`` maps give their size.
The unbounded level (``OMEGA``) is written as the string ``"omega"``.
"""

from __future__ import annotations

from typing import Any

from rest_framework import serializers
from rest_framework.renderers import JSONRenderer
from rest_framework.utils.encoders import JSONEncoder

from .games import OMEGA


class SortedJSONEncoder(JSONEncoder):
    def __init__(self, *args, **kwargs):
        kwargs['sort_keys'] = True
        super().__init__(*args, **kwargs)


class WorkbenchJSONRenderer(JSONRenderer):
    encoder_class = SortedJSONEncoder
    compact = False


def render_json(data: Any) -> str:
    return WorkbenchJSONRenderer().render(data, renderer_context={'indent': 2}).decode('utf-8')


class ExactIntegerField(serializers.Field):
    """Arbitrary-precision integer; never rounded or range-checked."""

    def to_representation(self, value):
        return int(value)

    def to_internal_value(self, data):
        try:
            return int(data)
        except (TypeError, ValueError):
            raise serializers.ValidationError('expected an integer') from None


class LevelField(serializers.Field):
    def to_representation(self, value):
        return 'omega' if value == OMEGA else int(value)

    def to_internal_value(self, data):
        return OMEGA if data == 'omega' else int(data)


class ValidateSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=['grammar', 'pds'])
    ok = serializers.BooleanField()
    summary = serializers.DictField(child=serializers.CharField())


class MeasureSerializer(serializers.Serializer):
    term = serializers.CharField()
    size = serializers.IntegerField()
    ntsize = serializers.IntegerField()
    height = serializers.IntegerField(allow_null=True)
    finite = serializers.BooleanField()
    vars = serializers.ListField(child=serializers.IntegerField())
    graph = serializers.CharField()


class PairMeasureSerializer(serializers.Serializer):
    left = MeasureSerializer()
    right = MeasureSerializer()
    size_pair = serializers.IntegerField()
    vars_pair = serializers.ListField(child=serializers.IntegerField())
    equal = serializers.BooleanField()


class StepSerializer(serializers.Serializer):
    term = serializers.CharField()
    word = serializers.ListField(child=serializers.CharField())
    mode = serializers.CharField()
    results = serializers.ListField(child=serializers.CharField())


class CertificateSerializer(serializers.Serializer):
    left = serializers.CharField()
    right = serializers.CharField()
    level = serializers.IntegerField()
    side = serializers.ChoiceField(choices=['left', 'right'])
    action = serializers.CharField()
    target = serializers.CharField()
    replies = serializers.ListField(child=serializers.DictField())


class EqLevelSerializer(serializers.Serializer):
    left = serializers.CharField()
    right = serializers.CharField()
    cap = serializers.IntegerField()
    result = serializers.ChoiceField(choices=['Finite', 'AtLeast'])
    level = serializers.IntegerField()
    weak = serializers.BooleanField()
    certificate = CertificateSerializer(required=False, allow_null=True)


class DecideSerializer(serializers.Serializer):
    left = serializers.CharField()
    right = serializers.CharField()
    method = serializers.ChoiceField(choices=['finite-state', 'effective'])
    result = serializers.CharField()
    level = LevelField(allow_null=True)


class ConstantsSerializer(serializers.Serializer):
    nonterminals = serializers.IntegerField()
    rules = serializers.IntegerField()
    size = serializers.IntegerField()
    constants = serializers.DictField(child=ExactIntegerField())
    digits = serializers.DictField(child=serializers.IntegerField())
    sink_words = serializers.DictField(child=serializers.CharField(allow_blank=True))


class BasisPairSerializer(serializers.Serializer):
    left = serializers.CharField()
    right = serializers.CharField()
    level = serializers.IntegerField()


class TraceEntrySerializer(serializers.Serializer):
    iteration = serializers.IntegerField()
    rank = serializers.CharField()
    left = serializers.CharField()
    right = serializers.CharField()
    level = serializers.IntegerField()
    control = ExactIntegerField()


class BasisSerializer(serializers.Serializer):
    n = ExactIntegerField()
    s = serializers.ListField(child=ExactIntegerField())
    e = serializers.ListField(child=ExactIntegerField())
    oracle = serializers.ChoiceField(choices=['exact', 'effective'])
    bound = ExactIntegerField()
    digits = serializers.DictField(child=serializers.IntegerField())
    basis = BasisPairSerializer(many=True)
    iterations = serializers.IntegerField()
    trace = TraceEntrySerializer(many=True, required=False)
    run = serializers.IntegerField(required=False, allow_null=True)


class TranslateSerializer(serializers.Serializer):
    direction = serializers.ChoiceField(choices=['pds2gram', 'gram2pds'])
    output = serializers.CharField()
    table = serializers.ListField(child=serializers.CharField())
    saturated = serializers.BooleanField()


class OrdinalSerializer(serializers.Serializer):
    verb = serializers.CharField()
    alpha = serializers.CharField(allow_blank=True)
    x = ExactIntegerField(required=False, allow_null=True)
    h = serializers.CharField(allow_blank=True)
    value = serializers.CharField()
    digits = serializers.IntegerField(required=False, allow_null=True)


class BoundSerializer(serializers.Serializer):
    n = ExactIntegerField()
    lines = serializers.DictField(child=serializers.CharField())
