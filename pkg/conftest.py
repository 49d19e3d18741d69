"""Hypothesis profiles; being at the root puts the flat modules on sys.path."""

import os

import hypothesis

hypothesis.settings.register_profile('fast', max_examples=10, deadline=None)
hypothesis.settings.register_profile('default', max_examples=100,
                                     deadline=None)
hypothesis.settings.register_profile('thorough', max_examples=500,
                                     deadline=None)
hypothesis.settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE',
                                                'default'))
