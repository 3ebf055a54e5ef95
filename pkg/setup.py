import os
from setuptools import find_packages, setup

with open(os.path.join(os.path.dirname(__file__), 'README.md')) as readme:
    README = readme.read()

# allow setup.py to be run from any path
os.chdir(os.path.normpath(os.path.join(os.path.abspath(__file__), os.pardir)))

setup(
    name='bms-decoder',
    version='0.1.0',
    packages=find_packages(exclude=['examples', 'examples.*']),
    include_package_data=True,
    license='GNU AGPL v3',
    description='Two-dimensional BMS algorithm over S(t) and bivariate abelian code decoding, as a Django module.',
    long_description=README,
    long_description_content_type='text/markdown',
    install_requires=[
        'django>=3.1',
        'pandas>=1.1.4',
    ],
    entry_points={
        'console_scripts': [
            'bmsa=bms_decoder.cli:main',
        ],
    },
    classifiers=[
        'Environment :: Console',
        'Framework :: Django',
        'Framework :: Django :: 3.2',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU Affero General Public License v3',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.7',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
