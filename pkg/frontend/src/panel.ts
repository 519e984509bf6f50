/** DOM-equivalent control-panel tree built from the ViewModel.
 *
 * Widgets exist if and only if their ControlMask flag is set; in solution
 * mode they stay present but disabled (the controls are frozen).  Real
 * browsers hydrate this tree into DOM nodes one-to-one.
 */

import { ViewModel } from './viewmodel';

export interface PanelNode {
  tag: string;
  id?: string;
  text?: string;
  disabled?: boolean;
  attrs?: Record<string, string>;
  children: PanelNode[];
}

const node = (tag: string, props: Partial<PanelNode> = {}, children: PanelNode[] = []): PanelNode => ({
  tag,
  children,
  ...props,
});

export function renderPanel(vm: ViewModel): PanelNode {
  const frozen = vm.controlsFrozen;
  const main: PanelNode[] = [node('viewport', { id: 'viewport-3d' })];

  if (vm.controls.move_sliders) {
    main.push(
      node('slider', { id: 'slider-m1', disabled: frozen,
                       attrs: { shape: 'straight-arrow', label: '1', value: String(vm.sliders.m1) } }),
      node('slider', { id: 'slider-m2', disabled: frozen,
                       attrs: { shape: 'straight-arrow', label: '2', value: String(vm.sliders.m2) } }),
    );
  }
  if (vm.controls.rotate_sliders) {
    main.push(
      node('slider', { id: 'slider-r1', disabled: frozen,
                       attrs: { shape: 'curved-arrow', label: '3', value: String(vm.sliders.r1) } }),
      node('slider', { id: 'slider-r2', disabled: frozen,
                       attrs: { shape: 'curved-arrow', label: '4', value: String(vm.sliders.r2) } }),
    );
  }
  if (vm.controls.view_left_right) {
    main.push(
      node('button', { id: 'view-left', text: 'Left', disabled: frozen }),
      node('button', { id: 'view-right', text: 'Right', disabled: frozen }),
    );
  }
  if (vm.controls.view_up_down) {
    main.push(
      node('button', { id: 'view-up', text: 'Up', disabled: frozen }),
      node('button', { id: 'view-down', text: 'Down', disabled: frozen }),
    );
  }
  if (vm.controls.cross_section_toggle) {
    main.push(
      node('checkbox', { id: 'cross-section-toggle', text: 'Cross-section', disabled: frozen,
                         attrs: { checked: String(vm.crossSectionChecked) } }),
    );
  }

  const helpAnswer: PanelNode[] = [];
  if (vm.page === 'play' || vm.page === 'tutorial') {
    helpAnswer.push(node('button', { id: 'help-button', text: 'Help?' }));
    if (vm.helpText) helpAnswer.push(node('text', { id: 'help-text', text: vm.helpText }));
    helpAnswer.push(node('button', { id: 'complete-task', text: 'Complete Task' }));
  }
  if (vm.answerPanel.showAnswerButton) {
    helpAnswer.push(node('button', { id: 'show-answer', text: 'Show Answer' }));
  }
  if (vm.answerPanel.nextTaskButton) {
    helpAnswer.push(node('button', { id: 'next-task', text: 'Next Task' }));
  }

  return node('page', { attrs: { page: vm.page } }, [
    node('header-panel', {}, [
      node('text', { id: 'task-title', text: vm.header.title }),
      node('progress', {
        id: 'progress-bar',
        attrs: { segments: vm.header.progress.map((f) => (f ? '1' : '0')).join('') },
      }),
    ]),
    node('main-panel', {}, [node('text', { id: 'prompt', text: vm.prompt }), ...main]),
    node('help-answer-panel', {}, helpAnswer),
  ]);
}

export function findById(root: PanelNode, id: string): PanelNode | null {
  if (root.id === id) return root;
  for (const child of root.children) {
    const hit = findById(child, id);
    if (hit) return hit;
  }
  return null;
}

export function collectText(root: PanelNode): string[] {
  const out: string[] = [];
  const walk = (n: PanelNode) => {
    if (n.text) out.push(n.text);
    n.children.forEach(walk);
  };
  walk(root);
  return out;
}
