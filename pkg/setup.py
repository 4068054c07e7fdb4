import setuptools
from setuptools import setup

with open("README.md", "r") as f:
    long_description = f.read()

_docs_deps = [
    "mkdocs-material",
    "mkdocs-minify-plugin",
]

setup(
    # Information
    name="comparative-alloc",
    description="Comparative-advantage bandwidth allocation for multi-tone (OFDMA) channels",
    long_description=long_description,
    long_description_content_type="text/markdown",
    version="0.1.0",
    license="MIT",
    keywords="ofdma resource block allocation comparative advantage frequency-selective fading capacity",
    install_requires=[
        "numpy>=1.18.1,<2.0",
        "pandas",
        "scipy>=1.7",
        "colorlog",
    ],
    extras_require={
        "dev": ["black", "isort>=5.12", "pytest<8.0", "flake8", "pre-commit"] + _docs_deps,
    },
    entry_points={
        "console_scripts": ["comparative-alloc=comparative_alloc.cli:main"],
    },
    package_dir={"": "./"},
    packages=setuptools.find_packages(where="./", include=["comparative_alloc*"]),
    include_package_data=True,
    python_requires=">=3.8",
)
