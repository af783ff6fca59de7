from setuptools import setup, find_packages

setup(
    name="ihtgap",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={
        "ihtgap": ["presets/*.yaml"],
    },
    install_requires=[
        "numpy",
        "scipy",
        "pandas",
        "matplotlib",
        "tqdm",
        "PyYAML",
        "pydantic>=2",
        "python-dotenv",
    ],
    extras_require={
        "tests": ["pytest"],
    },
    entry_points={
        "console_scripts": [
            "ihtgap=ihtgap.run:main",
        ],
    },
    python_requires=">=3.9",
    description="Generalization experiments for sparsity-constrained ERM solved with iterative hard thresholding",
    author="ihtgap developers",
)
