"""Legendre boundary fits under several regimes, and their extrapolation."""

import csv
import logging

import numpy as np

import hullscope.exceptions
import hullscope.settings
from hullscope.commands.base import BaseCommand, float_pair, int_list
from hullscope.legendre import (
    alternating_dataset,
    evaluate,
    extrapolation_profile,
    fit_boundary,
    parse_regime,
    regime_divergence,
    save_model,
    write_profile_csv,
)
from hullscope.utilities.report_utilities import write_csv, write_json

logger = logging.getLogger('hullscope.commands.legendre_demo')

ALTERNATING = 'alternating'
CUSTOM_PREFIX = 'custom:'


def read_labelled_csv(path):
    """Read `x,label` rows from a CSV file with that header."""
    try:
        with open(path, newline='') as csv_file:
            rows = list(csv.DictReader(csv_file))
        xs = [float(row['x']) for row in rows]
        labels = [int(float(row['label'])) for row in rows]
    except (OSError, KeyError, TypeError, ValueError) as error:
        raise hullscope.exceptions.FormatException(
            'Could not read x,label rows from %s: %s' % (path, error))
    if not xs:
        raise hullscope.exceptions.FormatException('%s holds no rows.' % path)
    return np.array(xs), np.array(labels)


class LegendreDemoCommand(BaseCommand):
    name = 'legendre-demo'
    help = 'Fit polynomial decision boundaries and profile them beyond the data.'

    @staticmethod
    def add_arguments(parser):
        parser.add_argument('--dataset', default=ALTERNATING,
                            help='alternating or custom:<csv with x,label>.')
        parser.add_argument('--changes', type=int,
                            default=hullscope.settings.LEGENDRE_CHANGES,
                            help='Sign changes of the alternating dataset.')
        parser.add_argument('--degrees', type=int_list,
                            default=hullscope.settings.LEGENDRE_DEGREES)
        parser.add_argument('--regimes', nargs='+', default=['minnorm'],
                            help='minnorm, ridge:<lambda>, anchored:<x>=<sign>[@<w>],...')
        parser.add_argument('--interval', type=float_pair, default=None,
                            help='a,b; defaults to the data interval widened '
                                 'by its width on each side.')
        parser.add_argument('--resolution', type=int,
                            default=hullscope.settings.LEGENDRE_RESOLUTION)
        parser.add_argument('--out', required=True)

    def _dataset(self):
        dataset = self.args.dataset
        if dataset == ALTERNATING:
            return alternating_dataset(self.args.changes)
        if dataset.startswith(CUSTOM_PREFIX):
            path = dataset[len(CUSTOM_PREFIX):]
            xs, labels = read_labelled_csv(path)
            self.manifest.add_input(path)
            return xs, labels
        raise hullscope.exceptions.ArgumentException(
            'Unknown dataset %s; expected alternating or custom:<csv>.' % dataset)

    def execute(self, executor):
        args = self.args
        xs, labels = self._dataset()
        regimes = [parse_regime(text) for text in args.regimes]
        low, high = float(xs.min()), float(xs.max())
        width = (high - low) or 2.0
        interval = args.interval or (low - width, high + width)
        # Probes one data width beyond each end: x = -2 and 2 for data on [-1, 1].
        off_data_xs = np.array([(low + high) / 2.0 - width, (low + high) / 2.0 + width])

        fits = []
        divergences = []
        for degree in args.degrees:
            models = []
            for number, regime in enumerate(regimes):
                model = fit_boundary(xs, labels, degree, regime)
                models.append(model)
                stem = 'degree%d_regime%d' % (degree, number)
                save_model(model, self.output_path(stem + '.json'))
                profile = extrapolation_profile(model, interval, args.resolution)
                write_profile_csv(profile, self.output_path(stem + '.csv'))
                fits.append({
                    'degree': degree,
                    'regime': regime.describe(),
                    'training_accuracy': model.training_accuracy,
                    'sign_changes': profile.sign_changes.tolist(),
                    'off_data_values': evaluate(model, off_data_xs).tolist(),
                })
            for number in range(1, len(models)):
                gaps = regime_divergence(models[0], models[number], off_data_xs)
                divergences.append({
                    'degree': degree,
                    'regimes': [regimes[0].describe(), regimes[number].describe()],
                    'off_data_xs': off_data_xs.tolist(),
                    'abs_difference': gaps.tolist(),
                })

        write_csv(self.output_path('fits.csv'),
                  ['degree', 'regime', 'training_accuracy', 'sign_changes'],
                  ((fit['degree'], fit['regime'], fit['training_accuracy'],
                    len(fit['sign_changes'])) for fit in fits))
        ordered = labels[np.argsort(xs, kind='stable')]
        required_changes = int(np.sum(ordered[1:] != ordered[:-1]))
        report = {
            'n': int(xs.shape[0]),
            'data_interval': [low, high],
            'profile_interval': list(interval),
            'sign_changes_in_labels': required_changes,
            'fits': fits,
            'regime_divergence': divergences,
            # Fits with fewer degrees than label sign changes cannot be exact.
            'underparameterized_all_inexact': all(
                fit['training_accuracy'] < 1.0 for fit in fits
                if fit['degree'] < required_changes),
        }
        write_json(self.output_path('report.json'), report)
        logger.info('Fitted %d models for degrees %s.', len(fits), args.degrees)
