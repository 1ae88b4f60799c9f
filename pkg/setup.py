import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="django-soloist-checker",
    version="1.0.0",
    author="Dan Greenhalgh",
    author_email="dgreenhalgh@vercer.co.uk",
    description="Offline checking of SOLOIST temporal properties over large timestamped traces",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/vercer-cmt/django-soloist-checker",
    packages=setuptools.find_packages(exclude=["test_app", "test_app.*"]),
    install_requires=["Django>=3.1", "lark>=1.1"],
    extras_require={"testing": ["hypothesis"]},
    entry_points={"console_scripts": ["soloist=soloist.cli:main"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "Framework :: Django",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.7",
)
