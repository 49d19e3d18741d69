"""A setuptools based setup module.

See:
https://packaging.python.org/en/latest/distributing.html
https://github.com/pypa/sampleproject
"""

# Always prefer setuptools over distutils
from setuptools import setup
# To use a consistent encoding
from codecs import open
from os import path

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, 'README.rst'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='monogen',

    # Versions should comply with PEP440.
    version='0.1.0',

    description='Exact arithmetic for monogenic orders in characteristic p.',
    long_description=long_description,

    license='MIT',

    # See https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
    ],

    keywords='function field monogenic order unit equation frobenius',

    # Flat module layout.
    py_modules=['frobsearch', 'funcfield', 'gf', 'jsonfile', 'linalg',
                'misctypes', 'monogen', 'monorder', 'scenario', 'textform',
                'tower', 'unitgrp', 'util', 'verify'],

    python_requires='>=3.8',
    install_requires=['appdirs', 'sympy', 'tabulate'],
    extras_require={
        'test': ['hypothesis', 'pytest'],
    },

    data_files=[('share/monogen/scenarios', [
        'scenarios/addendum.json',
        'scenarios/bounds.json',
        'scenarios/disc_eta.json',
        'scenarios/example_a1.json',
        'scenarios/example_b.json',
        'scenarios/order_eq_a1.json',
        'scenarios/search_a1.json',
        'scenarios/search_example_b.json',
        'scenarios/section_3_3.json',
        'scenarios/unit_solve_f2.json',
        'scenarios/unit_solve_f3.json',
    ])],

    entry_points={
        'console_scripts': [
            'monogen=monogen:_entry',
        ],
    },
)
