from setuptools import setup, find_packages

setup(
    name="vie_solver",
    version="0.1.0",
    description="VIE Solver - Volterra integral equations of the second kind by polynomialization and Picard iteration",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"vie_solver": ["config/*.yaml"]},
    install_requires=[
        "annotated-types==0.7.0",
        "click==8.3.1",
        "markdown-it-py==4.0.0",
        "mdurl==0.1.2",
        "mpmath==1.3.0",
        "pydantic==2.12.5",
        "pydantic_core==2.41.5",
        "Pygments==2.19.2",
        "pyparsing==3.2.5",
        "PyYAML==6.0.3",
        "rich==14.2.0",
        "sympy==1.14.0",
        "typing-inspection==0.4.2",
        "typing_extensions==4.15.0",
    ],
    extras_require={
        "test": ["pytest"],
    },
    entry_points={
        "console_scripts": [
            "vie-solver=vie_solver.pipeline.main:cli",
        ],
    },
    python_requires=">=3.10",
)
