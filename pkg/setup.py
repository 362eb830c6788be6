#!/usr/bin/env python

"""
Author: kreinframes contributors
Date: 2026-10-18 17:30:44
LastEditTime: 2026-10-18 17:30:44
Description: The setup script
FilePath: /kreinframes/setup.py
"""

import io
from os import path as op
from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as readme_file:
    readme = readme_file.read()
here = op.abspath(op.dirname(__file__))


# get the dependencies and installs
with io.open(op.join(here, "requirements.txt"), encoding="utf-8") as f:
    all_reqs = f.read().split("\n")

install_requires = [x.strip() for x in all_reqs if x.strip() and "git+" not in x]

setup_requirements = [
    "pytest-runner",
]

test_requirements = [
    "pytest>=3",
    "hypothesis",
]

setup(
    author="kreinframes contributors",
    python_requires=">=3.8",
    classifiers=[
        "Development Status :: 2 - Pre-Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    description="Frames and J-frames in finite-dimensional Krein spaces",
    entry_points={
        "console_scripts": [
            "kreinframes=kreinframes.cli:main",
        ],
    },
    install_requires=install_requires,
    license="MIT license",
    long_description=readme,
    long_description_content_type="text/markdown",
    include_package_data=True,
    keywords="kreinframes",
    name="kreinframes",
    packages=find_packages(include=["kreinframes", "kreinframes.*"]),
    setup_requires=setup_requirements,
    test_suite="tests",
    tests_require=test_requirements,
    version='0.1.0',
    zip_safe=False,
)
