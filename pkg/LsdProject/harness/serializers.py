"""
Serializers for instance and experiment documents.
"""
from django.utils.translation import gettext as _
from rest_framework import serializers

from core.conf import lsd_setting
from core.exceptions import ConfigError
from core.rewards import Regime, RewardTable
from harness.config import ExperimentConfig, parse_algorithm

DEFAULT_ALGORITHMS = ['isi', 'combucb1', 'oracle_greedy']


def format_errors(detail, prefix=''):
    """Flatten nested serializer errors into `arms[2].values_neg: message` lines."""
    if isinstance(detail, dict):
        lines = []
        for key, value in detail.items():
            if isinstance(key, int):
                path = f"{prefix}[{key}]"
            elif key == 'non_field_errors':
                path = prefix
            else:
                path = f"{prefix}.{key}" if prefix else str(key)
            lines.extend(format_errors(value, path))
        return lines
    if isinstance(detail, list) and any(isinstance(item, (dict, list)) for item in detail):
        lines = []
        for index, item in enumerate(detail):
            if item:
                lines.extend(format_errors(item, f"{prefix}[{index}]"))
        return lines
    messages = detail if isinstance(detail, list) else [detail]
    return [f"{prefix or 'document'}: {message}" for message in messages]


class ArmSerializer(serializers.Serializer):
    """Serializer for the reward values of one arm."""
    values_neg = serializers.ListField(
            child=serializers.FloatField(min_value=0.0, max_value=1.0),
            allow_empty=False,
    )
    values_pos = serializers.ListField(
            child=serializers.FloatField(min_value=0.0, max_value=1.0),
            allow_empty=False,
    )

    def validate_values_neg(self, value):
        """Rewards cannot grow with the length of a run."""
        if any(later > earlier for earlier, later in zip(value, value[1:])):
            msg = _("Rewards must not increase along negative states.")
            raise serializers.ValidationError(msg)
        return value


class InstanceSerializer(serializers.Serializer):
    """Serializer for an instance file."""
    K = serializers.IntegerField(min_value=1)
    tau_max = serializers.IntegerField(min_value=1)
    arms = ArmSerializer(many=True)
    constant_negative = serializers.BooleanField(required=False)

    def validate(self, attrs):
        errors = {}
        if len(attrs['arms']) != attrs['K']:
            errors['arms'] = _("Expected %(K)s arms, got %(n)s.") % {
                'K': attrs['K'], 'n': len(attrs['arms']),
            }
        for index, arm in enumerate(attrs['arms']):
            for side in ('values_neg', 'values_pos'):
                if len(arm[side]) != attrs['tau_max']:
                    errors[f'arms[{index}].{side}'] = _(
                            "Expected tau_max = %(tau_max)s values, got %(n)s."
                    ) % {'tau_max': attrs['tau_max'], 'n': len(arm[side])}
        if errors:
            raise serializers.ValidationError(errors)

        flag = attrs.get('constant_negative')
        constant = all(len(set(arm['values_neg'])) == 1 for arm in attrs['arms'])
        if flag is not None and flag != constant:
            msg = _("constant_negative is %(flag)s but the negative values say %(constant)s.") % {
                'flag': flag, 'constant': constant,
            }
            raise serializers.ValidationError({'constant_negative': msg})
        return attrs

    def create(self, validated_data):
        """Build the reward table."""
        arms = validated_data['arms']
        return RewardTable(
                negative=[arm['values_neg'] for arm in arms],
                positive=[arm['values_pos'] for arm in arms],
        )


class ExperimentConfigSerializer(serializers.Serializer):
    """Serializer for an experiment configuration."""
    instance = serializers.CharField()
    block_size = serializers.IntegerField(min_value=1)
    horizon = serializers.IntegerField(min_value=1, required=False)
    alpha = serializers.FloatField(required=False)
    algorithms = serializers.ListField(
            child=serializers.CharField(),
            allow_empty=False,
            required=False,
    )
    repetitions = serializers.IntegerField(min_value=1, required=False)
    seed = serializers.IntegerField(min_value=0, default=0)
    out = serializers.CharField(default='results')
    regime = serializers.ChoiceField(
            choices=[regime.value for regime in Regime],
            required=False,
            allow_null=True,
    )
    enumeration_cap = serializers.IntegerField(min_value=1, required=False)
    workers = serializers.IntegerField(min_value=1, required=False)
    paired = serializers.BooleanField(default=False)
    noise = serializers.BooleanField(default=True)
    solver = serializers.ChoiceField(choices=['bnb', 'enumerate'], default='bnb')

    def validate_alpha(self, value):
        if value <= 0:
            raise serializers.ValidationError(_("Exploration parameter must be positive."))
        return value

    def validate_algorithms(self, value):
        try:
            return [parse_algorithm(text) for text in value]
        except ConfigError as error:
            raise serializers.ValidationError(str(error))

    def validate(self, attrs):
        attrs.setdefault('horizon', lsd_setting('HORIZON'))
        attrs.setdefault('alpha', lsd_setting('ALPHA'))
        attrs.setdefault('repetitions', lsd_setting('REPETITIONS'))
        attrs.setdefault('workers', lsd_setting('WORKERS'))
        attrs.setdefault('enumeration_cap', lsd_setting('ENUMERATION_CAP'))
        if 'algorithms' not in attrs:
            attrs['algorithms'] = [parse_algorithm(text) for text in DEFAULT_ALGORITHMS]
        if attrs['block_size'] + 1 > attrs['horizon']:
            msg = _("Horizon must be at least block_size + 1.")
            raise serializers.ValidationError({'horizon': msg})
        return attrs

    def create(self, validated_data):
        validated_data['algorithms'] = tuple(validated_data['algorithms'])
        return ExperimentConfig(**validated_data)
