from setuptools import setup, find_packages

setup(
    name="minorkit",
    version="0.1.0",
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    install_requires=[
        "numpy>=1.24.0",
        "pandas>=2.0.0",
        "networkx>=3.2",
        "pydantic>=2.0.0",
        "python-dotenv>=0.19.0",
    ],
    extras_require={
        "dev": [
            "pytest",
            "black",
            "flake8",
            "isort",
        ]
    },
    entry_points={
        "console_scripts": ["minorkit=minorkit.interface.cli:main"],
    },
    description="Obstructions of apex classes of minor-closed graph classes, flat walls and their bounds",
    keywords="graph minors, obstructions, flat walls, treewidth",
    python_requires=">=3.10",
)
