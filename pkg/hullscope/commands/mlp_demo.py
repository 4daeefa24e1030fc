"""Pairs of small networks compared inside and outside the training hull."""

import logging

import hullscope.settings
from hullscope.commands.base import BaseCommand, int_list
from hullscope.mlp_demo import (
    demo_dataset,
    run_seed_pairs,
    save_polygon,
    train_mlp,
    write_grid_csv,
    write_loss_csv,
)
from hullscope.models import TrainRegime
from hullscope.utilities.report_utilities import write_csv, write_json

logger = logging.getLogger('hullscope.commands.mlp_demo')

# A single hidden unit draws one line, which cannot split the demo classes.
UNDERPARAMETERIZED_ARCH = (2, 1, 1)


def _default_seeds():
    return list(range(2 * hullscope.settings.MLP_SEED_PAIRS))


class MlpDemoCommand(BaseCommand):
    name = 'mlp-demo'
    help = 'Train networks from paired seeds and split their disagreement by the hull.'

    @staticmethod
    def add_arguments(parser):
        parser.add_argument('--seeds', type=int_list, default=_default_seeds(),
                            help='Even-length list; seeds pair up in order.')
        parser.add_argument('--arch', type=int_list,
                            default=hullscope.settings.MLP_ARCH)
        parser.add_argument('--steps', type=int, default=hullscope.settings.MLP_STEPS)
        parser.add_argument('--lr', type=float,
                            default=hullscope.settings.MLP_LEARNING_RATE)
        parser.add_argument('--weight-decay', type=float, default=0.0)
        parser.add_argument('--batch', type=int, default=None)
        parser.add_argument('--resolution', type=int,
                            default=hullscope.settings.MLP_GRID_RESOLUTION)
        parser.add_argument('--out', required=True)

    def seeds(self):
        return {'dataset': self.args.seed, 'training': list(self.args.seeds)}

    def execute(self, executor):
        args = self.args
        data = demo_dataset(args.seed)
        write_csv(self.output_path('dataset.csv'), ['x', 'y', 'label'],
                  ((x, y, label) for (x, y), label
                   in zip(data.data.tolist(), data.labels.tolist())))
        regime = TrainRegime(seed=0, steps=args.steps, learning_rate=args.lr,
                             weight_decay=args.weight_decay, batch=args.batch)
        experiment = run_seed_pairs(data, args.arch, args.seeds, regime,
                                    args.resolution, executor)
        save_polygon(experiment.polygon, self.output_path('hull.json'))
        for seed, run in experiment.runs.items():
            write_loss_csv(run, self.output_path('loss_seed%d.csv' % seed))
            write_grid_csv(experiment.grids[seed], experiment.bounds,
                           args.resolution, self.output_path('grid_seed%d.csv' % seed))
        write_csv(self.output_path('pairs.csv'),
                  ['seed_a', 'seed_b', 'accuracy_a', 'accuracy_b',
                   'inside_disagreement', 'outside_disagreement'],
                  ((report.seeds[0], report.seeds[1], report.accuracies[0],
                    report.accuracies[1], report.split.inside, report.split.outside)
                   for report in experiment.reports))

        contrast = train_mlp(data, UNDERPARAMETERIZED_ARCH, TrainRegime(
            seed=args.seeds[0], steps=args.steps, learning_rate=args.lr))
        report = experiment.summary()
        report.update({
            'arch': list(args.arch),
            'regime': regime.serialize(exclusions={'TrainRegime': ['seed']}),
            'runs': {str(seed): run.serialize()
                     for seed, run in experiment.runs.items()},
            'pair_reports': [pair.serialize() for pair in experiment.reports],
            'underparameterized': {
                'arch': list(UNDERPARAMETERIZED_ARCH),
                'accuracy': contrast.accuracy,
            },
        })
        write_json(self.output_path('report.json'), report)
        logger.info('Inside disagreement stayed at or below outside disagreement '
                    'for %d of %d seed pairs.',
                    report['pairs_inside_not_above_outside'], len(experiment.reports))
