import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="hullscope",
    version="0.1.0",
    description="Distances from query points to the convex hull of a reference set.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["examples", "examples.*"]),
    package_data={"hullscope.settings": ["*.conf"]},
    install_requires=[
        "numpy>=1.20",
        "scipy>=1.7",
        "jsonschema>=3.2",
    ],
    entry_points={
        "console_scripts": [
            "hullscope=hullscope.cli:main",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
    ],
    python_requires='>=3.8',
)
