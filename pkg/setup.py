from setuptools import setup

with open("README.rst", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="manifoldstats",
    version="0.1.0",
    license="MIT",
    description="Census, flip search and statistics of triangulated " +
        "3-manifolds",
    long_description=long_description,
    long_description_content_type="text/x-rst",
    packages=["manifoldstats"],
    package_data={"manifoldstats": ["data/*.json"]},
    keywords="triangulations 3-manifolds bistellar-flips f-vector " +
        "homology census",
    install_requires=[
        "joblib",
        "networkx",
        "numpy",
        "sympy",
        "tabulate",
    ],
    entry_points={
        "console_scripts": ["manifoldstats=manifoldstats.__main__:main"],
    },
)
